#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oulevy/cameron_martin.hpp"
#include "oulevy/levy.hpp"
#include "oulevy/parallel.hpp"
#include "oulevy/simulate.hpp"
#include "oulevy/spectral_model.hpp"
#include "oulevy/time_grid.hpp"

namespace oulevy {

// Raised when a weight computation is requested for a configuration whose
// representative norm diverges; carries the divergence certificate.
struct PreconditionError : std::runtime_error {
    SeriesVerdict witness;
    PreconditionError(const std::string& what, SeriesVerdict w)
        : std::runtime_error(what), witness(std::move(w)) {}
};

// exp( sum_n sum_k u_n(t_k) dbeta_{n,k} - 1/2 sum_n sum_k u_n(t_k)^2 dt_k ):
// left-endpoint (predictable) evaluation of the stochastic exponential
// against the standard per-mode increments.  u ident. 0 gives exactly 1.
double doleans_exponential(const std::vector<std::vector<double>>& u_values,
                           const std::vector<std::vector<double>>& brownian_increments,
                           const TimeGrid& grid);

// Two weight constructions for the generator change, both mean-one:
//
//  cm_translation  Stochastic exponential of the jump-measurable
//                  representative along the recorded Brownian increments.
//                  This is the explicit translation density of the proof
//                  machinery; it covers the jump-drift channel only.
//
//  full_density    Exact likelihood ratio of the grid marginals: per mode,
//                  the product of one-step Gaussian transition densities of
//                  the centered chain under the target generator over the
//                  same under the sampling generator.  Covers both the
//                  translation and the Gaussian-channel covariance change,
//                  so reweighted statistics of any grid functional are
//                  unbiased for the target process.
enum class WeightMode { cm_translation, full_density };

const char* to_string(WeightMode m);

struct WeightedReplica {
    double weight = 1.0;
    std::vector<double> terminal;  // X(T)
};

struct WeightEstimate {
    std::vector<WeightedReplica> replicas;
    double mean_weight = 0.0;
    double weight_se = 0.0;
    double ess = 0.0;  // (sum w)^2 / sum w^2
};

struct GirsanovSettings {
    double T = 1.0;
    int base_steps = 256;
    int replicas = 10000;
    std::uint64_t master_seed = 1;
    WeightMode mode = WeightMode::full_density;
    ExecMode exec = ExecMode::parallel;
};

// Samples the jump process once per replica, simulates the path under the
// sampling generator (Atilde for the forward direction), and attaches the
// weight that turns its statistics into target-generator statistics.
// Precondition: the representative norm for the direction converges (checked
// via the symbolic scan when sequences are attached).
WeightEstimate estimate_density_weights(const SpectralModel& model, const LevyConfig& levy,
                                        CMDirection direction,
                                        const GirsanovSettings& settings);

enum class Functional { coordinate, squared_norm };

const char* to_string(Functional f);
double evaluate_functional(Functional f, const std::vector<double>& x);

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

struct DensityReport {
    int replicas = 0;
    double mean_weight = 0.0;
    double weight_se = 0.0;
    double ess = 0.0;
    MeanSe functional_direct;
    MeanSe functional_reweighted;
    double z_score = 0.0;
    Functional functional = Functional::coordinate;
    WeightMode mode = WeightMode::full_density;
};

// Direct Monte Carlo under the target generator vs the reweighted estimator
// under the sampling generator; reports the z-score of the difference.
DensityReport importance_test(const SpectralModel& model, const LevyConfig& levy,
                              Functional functional, const GirsanovSettings& settings);

}  // namespace oulevy
