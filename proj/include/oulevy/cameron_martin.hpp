#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oulevy/levy.hpp"
#include "oulevy/series.hpp"
#include "oulevy/spectral_model.hpp"

namespace oulevy {

// Direction of the representation.  Forward (A -> Atilde) writes the
// jump-drift discrepancy as a shift in the Atilde-channel reproducing space;
// its per-mode representative decays at rate a_n and carries the prefactor
// (atilde_n - a_n) / sqrt(q_n).  The reverse direction swaps the roles.
enum class CMDirection { a_to_atilde, atilde_to_a };

const char* to_string(CMDirection d);

// Novikov-side summary for compound Poisson jumps.
//
//   C_T     = (1 - e^{-2 a_min T}) / (2 a_min)   (squared L^2-in-time operator
//             norm of the decaying semigroup in the diagonal model)
//   E       = E exp((C_T / 2) ||Q^{1/2} xi||^2)
//   bound   = exp(lambda T (E - 1))
//
// subinterval_T is the largest horizon on which the bound stays finite when
// the law has a finite exponential-moment threshold (+inf = every horizon,
// 0 = none; the bound is finite for T < subinterval_T and the full horizon is
// then covered by iterating on subintervals).
struct NovikovReport {
    double C_T = 0.0;
    double required_c = 0.0;
    double exp_moment_value = 0.0;  // may be +inf
    double bound_value = 0.0;       // exp(lambda T (E - 1)) when finite
    bool satisfied = false;
    double subinterval_T = 0.0;
};

struct CMReport {
    CMDirection direction = CMDirection::a_to_atilde;
    SeriesVerdict l2_norm_sq;
    std::vector<double> per_mode_terms;
    bool representable = false;  // == l2_norm_sq.converged
    NovikovReport novikov;
};

// The representative at one time: component n is
//   prefactor_n / sqrt(q_n) * ( sum_{tau_i <= t} e^{-decay_n (t - tau_i)} xi_{i,n}
//                               + b_n (1 - e^{-decay_n t}) / decay_n ).
std::vector<double> cm_representative_at(const SpectralModel& model, CMDirection direction,
                                         const MarkedPointSet& points,
                                         const std::vector<double>& drift_b, double t);

// Per-mode values on a time grid: result[n][k] = u_n(t_k).
std::vector<std::vector<double>> cm_representative(const SpectralModel& model,
                                                   CMDirection direction,
                                                   const MarkedPointSet& points,
                                                   const std::vector<double>& drift_b,
                                                   const std::vector<double>& t_grid);

// The jump-drift discrepancy the representative encodes: component n of
// G_src(t) - G_dst(t) where G_B = jump + drift convolution under generator B
// (src = A, dst = Atilde for the forward direction).
std::vector<double> cm_discrepancy_at(const SpectralModel& model, CMDirection direction,
                                      const MarkedPointSet& points,
                                      const std::vector<double>& drift_b, double t);

// ||u||^2_{L^2(0,T;H)} for a concrete point set.  Single jump with zero drift
// uses the closed form sum_n pref_n^2 (1 - e^{-2 decay_n (T-s)}) |xi_n|^2 /
// (2 decay_n q_n); otherwise each mode is integrated numerically with
// breakpoints at the jump times.
SeriesVerdict cm_l2_norm(const SpectralModel& model, CMDirection direction,
                         const MarkedPointSet& points, const std::vector<double>& drift_b,
                         double T, std::vector<double>* per_mode_terms = nullptr);

// Symbolic-sequence scan of the single-jump norm series (jump profile xi_n
// from the attached sequences, jump at time s); divergence heuristic applies.
SeriesVerdict cm_l2_scan(const SpectralModel& model, CMDirection direction, double T,
                         double jump_time);

NovikovReport novikov_bound(const SpectralModel& model, double rate, const JumpLaw& law,
                            double T, Generator source = Generator::A);

// Monte Carlo side of the conditioning identity behind the bound: the mean of
// exp((C_T/2) sum_i ||Q^{1/2} xi_i||^2) over compound Poisson draws.
struct NovikovMcEstimate {
    double mean = 0.0;
    double se = 0.0;
    int draws = 0;
};
NovikovMcEstimate novikov_mc_check(const SpectralModel& model, double rate,
                                   const JumpLaw& law, double T, int draws,
                                   std::uint64_t master_seed);

// The naive-factorisation diagnostic sum_n (atilde_n - a_n)^2 e^{-2 a_n t} / q_n
// evaluated at the reference time t = T/2.
SeriesVerdict factorisation_check(const SpectralModel& model, double T);

CMReport make_cm_report(const SpectralModel& model, CMDirection direction,
                        const MarkedPointSet& points, const std::vector<double>& drift_b,
                        double T, double rate, const JumpLaw& law);

// Reproducers for the four counterexample configurations.
struct ExampleOutcome {
    std::string id;
    std::optional<SeriesVerdict> cm_forward;
    std::optional<SeriesVerdict> cm_reverse;
    std::optional<SeriesVerdict> hs;
    std::optional<SeriesVerdict> factorisation;
    std::optional<double> expected_l2_norm_sq;  // mean of ||U||^2 over the mark law
    std::optional<NovikovReport> novikov;
    bool matches_expected = false;
    std::string expected_summary;
};

// id in {no-l2, one-sided, novikov-fails, no-factorisation}.
ExampleOutcome reproduce_example(const std::string& id);

const std::vector<std::string>& example_ids();

}  // namespace oulevy
