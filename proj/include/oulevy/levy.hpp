#pragma once

#include <string>
#include <vector>

#include "oulevy/rng.hpp"

namespace oulevy {

// One jump-law family per counterexample mechanism: per-mode Gaussian marks
// (exponential-moment threshold), a deterministic per-mode profile fired at
// every jump, a heavy-tailed scalar on mode 1 (no exponential moment at all),
// and a point mass.
enum class JumpKind { diagonal_gaussian, deterministic_profile, scalar_student_t, point_mass };

struct JumpLaw {
    JumpKind kind;
    std::vector<double> sigma;    // diagonal_gaussian: per-mode std dev
    std::vector<double> profile;  // deterministic_profile / point_mass: the vector
    double nu = 0.0;              // scalar_student_t: degrees of freedom, > 2

    static JumpLaw diagonal_gaussian(std::vector<double> sigma);
    static JumpLaw deterministic_profile(std::vector<double> xi);
    static JumpLaw student_t(double nu, int dim);
    static JumpLaw point_mass(std::vector<double> v);

    int dim() const;

    // Largest c such that E exp(c ||Q^{1/2} xi||^2) < inf for all 0 < c' < c;
    // +inf for the deterministic families, 0 for student t.
    double exp_moment_threshold(const std::vector<double>& q) const;

    std::vector<double> sample(CounterRng& rng) const;
};

// E exp(c ||Q^{1/2} xi||^2).  Analytic for every registered family:
//   gaussian:       prod_n (1 - 2 c q_n sigma_n^2)^{-1/2}  when all factors valid
//   deterministic:  exp(c sum_n q_n xi_n^2)
//   student t:      +inf for every c > 0
// Returns +inf past the threshold.
double exp_moment(const JumpLaw& law, double c, const std::vector<double>& q);

// Realization of the jump process: strictly increasing times in (0, T] with
// one mark vector per time.
struct MarkedPointSet {
    std::vector<double> times;
    std::vector<std::vector<double>> marks;

    size_t count() const { return times.size(); }
    void validate(double T) const;
};

// times ~ order statistics of uniforms given a Poisson(rate*T) count; marks
// i.i.d. from the law.  Exact and gridless.
MarkedPointSet sample_compound_poisson(double rate, const JumpLaw& law, double T,
                                       CounterRng& time_rng, CounterRng& mark_rng);

struct LevyConfig {
    std::vector<double> drift_b;
    bool gaussian_enabled = true;
    double rate_lambda = 0.0;
    JumpLaw jump_law = JumpLaw::point_mass({0.0});

    bool pure_jump() const;
    void validate(int dim) const;
};

}  // namespace oulevy
