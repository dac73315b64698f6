#pragma once

#include <complex>
#include <vector>

#include "oulevy/series.hpp"
#include "oulevy/spectral_model.hpp"

namespace oulevy {

// Deterministic equivalence criteria for the diagonal model.  All functions
// are pure and thread-safe.

// Apply the semigroup: component n of the result is e^{-a_n t} x_n.
std::vector<double> semigroup_apply(const SpectralModel& model, Generator which, double t,
                                    const std::vector<double>& x);

// Closed form of int_0^T sum_n (atilde_n - a_n)^2 q_n e^{-2 a_n t} dt
//   = sum_n (atilde_n - a_n)^2 q_n (1 - e^{-2 a_n T}) / (2 a_n).
SeriesVerdict hs_perturbation_integral(const SpectralModel& model, double T);

// sup_n |atilde_n - a_n| a_n^{-beta}; tail_increasing warns when the per-mode
// sequence is still growing at the last examined index.
SeriesVerdict fractional_bound(const SpectralModel& model, double beta);

// max over the sampled sector grid of |lambda|^beta * max_n |atilde_n - a_n| / |lambda + a_n|.
double resolvent_criterion(const SpectralModel& model, double beta, double theta,
                           const std::vector<std::complex<double>>& lambda_grid);

// Log-spaced sector sample: `moduli` points on [mod_min, mod_max] for each of
// `rays` argument values spread inside (-theta, theta).
std::vector<std::complex<double>> sector_grid(double theta, double mod_min, double mod_max,
                                              int moduli, int rays);

// max over the time grid of t^beta * max_n a_n^beta e^{-a_n t}; bounded by
// (beta/e)^beta uniformly in the model.
double smoothing_constant(const SpectralModel& model, double beta,
                          const std::vector<double>& t_grid);

// | (e^{-atilde_n t} - e^{-a_n t}) - int_0^t e^{-atilde_n (t-s)} (a_n - atilde_n) e^{-a_n s} ds |
// with the integral done by adaptive quadrature; ~1e-12 for sane inputs.
double duhamel_residual(const SpectralModel& model, int mode_1based, double t);

}  // namespace oulevy
