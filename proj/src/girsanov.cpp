#include "oulevy/girsanov.hpp"

#include <cmath>

#include "oulevy/errors.hpp"
#include "oulevy/numerics.hpp"

namespace oulevy {

const char* to_string(WeightMode m) {
    return m == WeightMode::cm_translation ? "cm_translation" : "full_density";
}

const char* to_string(Functional f) {
    return f == Functional::coordinate ? "coordinate" : "squared_norm";
}

double evaluate_functional(Functional f, const std::vector<double>& x) {
    if (f == Functional::coordinate) return x.empty() ? 0.0 : x[0];
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

double doleans_exponential(const std::vector<std::vector<double>>& u_values,
                           const std::vector<std::vector<double>>& brownian_increments,
                           const TimeGrid& grid) {
    const int K = grid.steps();
    if (u_values.size() != brownian_increments.size())
        throw InputError("doleans_exponential: mode count mismatch");
    double log_w = 0.0;
    for (size_t n = 0; n < u_values.size(); ++n) {
        if (static_cast<int>(u_values[n].size()) != grid.size() ||
            static_cast<int>(brownian_increments[n].size()) != K)
            throw InputError("doleans_exponential: grid mismatch");
        for (int k = 0; k < K; ++k) {
            const double dt = grid.times()[k + 1] - grid.times()[k];
            const double u = u_values[n][k];  // left endpoint
            log_w += u * brownian_increments[n][k] - 0.5 * u * u * dt;
        }
    }
    return std::exp(log_w);
}

namespace {

// log one-step transition density of the exact OU chain.
double log_transition(double a, double q, double dt, double from, double to) {
    const double mean = std::exp(-a * dt) * from;
    const double var = ou_step_variance(a, q, dt);
    const double r = to - mean;
    return -0.5 * std::log(6.283185307179586 * var) - 0.5 * r * r / var;
}

struct ArmSetup {
    Generator sampling;
    Generator target;
};

ArmSetup arm_setup(CMDirection d) {
    // Forward direction: target-law statistics under A, sampled under Atilde.
    return d == CMDirection::a_to_atilde ? ArmSetup{Generator::Atilde, Generator::A}
                                         : ArmSetup{Generator::A, Generator::Atilde};
}

// jump + drift convolution under one generator, per grid time.
std::vector<std::vector<double>> deterministic_channel(const SpectralModel& model,
                                                       Generator which,
                                                       const MarkedPointSet& points,
                                                       const std::vector<double>& b,
                                                       const TimeGrid& grid) {
    std::vector<std::vector<double>> g(grid.size());
    for (int k = 0; k < grid.size(); ++k) {
        auto v = jump_convolution(model, which, points, grid.times()[k]);
        const auto d = drift_convolution(model, which, b, grid.times()[k]);
        for (int n = 0; n < model.dim(); ++n) v[n] += d[n];
        g[k] = std::move(v);
    }
    return g;
}

double full_density_weight(const SpectralModel& model, const SamplePath& path,
                           const MarkedPointSet& points, const std::vector<double>& b,
                           Generator sampling, Generator target) {
    const auto g_s = deterministic_channel(model, sampling, points, b, path.grid);
    const auto g_t = deterministic_channel(model, target, points, b, path.grid);
    double log_w = 0.0;
    for (int n = 0; n < model.dim(); ++n) {
        const double a_s = model.decay(sampling, n);
        const double a_t = model.decay(target, n);
        const double q = model.q()[n];
        for (int k = 0; k + 1 < path.grid.size(); ++k) {
            const double dt = path.grid.times()[k + 1] - path.grid.times()[k];
            const double ys0 = path.values[k][n] - g_s[k][n];
            const double ys1 = path.values[k + 1][n] - g_s[k + 1][n];
            const double yt0 = path.values[k][n] - g_t[k][n];
            const double yt1 = path.values[k + 1][n] - g_t[k + 1][n];
            log_w += log_transition(a_t, q, dt, yt0, yt1) -
                     log_transition(a_s, q, dt, ys0, ys1);
        }
    }
    return std::exp(log_w);
}

void check_cm_precondition(const SpectralModel& model, CMDirection direction, double T) {
    // Finite truncations always converge; the scan needs the symbolic profile.
    if (!model.has_symbolic() || model.symbolic().xi.empty()) return;
    const SeriesVerdict v = cm_l2_scan(model, direction, T, 0.5 * T);
    if (!v.converged)
        throw PreconditionError(
            std::string("representative norm diverges for direction ") + to_string(direction),
            v);
}

}  // namespace

WeightEstimate estimate_density_weights(const SpectralModel& model, const LevyConfig& levy,
                                        CMDirection direction,
                                        const GirsanovSettings& settings) {
    levy.validate(model.dim());
    if (!levy.gaussian_enabled)
        throw InputError("density weights require the Gaussian channel");
    check_cm_precondition(model, direction, settings.T);
    const ArmSetup arms = arm_setup(direction);

    WeightEstimate est;
    est.replicas.resize(settings.replicas);
    parallel_for(
        settings.replicas,
        [&](int r) {
            ReplicaStreams streams{settings.master_seed, static_cast<std::uint64_t>(r), 1};
            MarkedPointSet points;
            if (levy.rate_lambda > 0.0) {
                CounterRng trng = streams.jump_times();
                CounterRng mrng = streams.jump_marks();
                points = sample_compound_poisson(levy.rate_lambda, levy.jump_law, settings.T,
                                                 trng, mrng);
            }
            const TimeGrid grid(settings.T, settings.base_steps, points.times);
            std::vector<std::vector<double>> dbeta;
            const SamplePath path = simulate_ou_path(model, arms.sampling, levy, grid,
                                                     points, streams, &dbeta);
            double w = 1.0;
            if (settings.mode == WeightMode::cm_translation) {
                const auto u = cm_representative(model, direction, points, levy.drift_b,
                                                 grid.times());
                w = doleans_exponential(u, dbeta, grid);
            } else {
                w = full_density_weight(model, path, points, levy.drift_b, arms.sampling,
                                        arms.target);
            }
            est.replicas[r] = WeightedReplica{w, path.terminal()};
        },
        settings.exec);

    double sum = 0.0, sum_sq = 0.0;
    for (const auto& rep : est.replicas) {
        sum += rep.weight;
        sum_sq += rep.weight * rep.weight;
    }
    const int M = settings.replicas;
    est.mean_weight = sum / M;
    est.weight_se = std::sqrt(
        std::max(0.0, (sum_sq - sum * sum / M) / (M - 1)) / M);
    est.ess = sum * sum / sum_sq;
    return est;
}

DensityReport importance_test(const SpectralModel& model, const LevyConfig& levy,
                              Functional functional, const GirsanovSettings& settings) {
    const CMDirection direction = CMDirection::a_to_atilde;
    const ArmSetup arms = arm_setup(direction);
    const WeightEstimate weighted = estimate_density_weights(model, levy, direction, settings);

    const int M = settings.replicas;
    // Reweighted arm: mean of f(X) * w.
    double rw_sum = 0.0, rw_sq = 0.0;
    for (const auto& rep : weighted.replicas) {
        const double fw = evaluate_functional(functional, rep.terminal) * rep.weight;
        rw_sum += fw;
        rw_sq += fw * fw;
    }

    // Direct arm under the target generator, independent streams.
    std::vector<double> direct(M, 0.0);
    parallel_for(
        M,
        [&](int r) {
            ReplicaStreams streams{settings.master_seed, static_cast<std::uint64_t>(r), 2};
            MarkedPointSet points;
            if (levy.rate_lambda > 0.0) {
                CounterRng trng = streams.jump_times();
                CounterRng mrng = streams.jump_marks();
                points = sample_compound_poisson(levy.rate_lambda, levy.jump_law, settings.T,
                                                 trng, mrng);
            }
            const TimeGrid grid(settings.T, settings.base_steps, points.times);
            const SamplePath path =
                simulate_ou_path(model, arms.target, levy, grid, points, streams, nullptr);
            direct[r] = evaluate_functional(functional, path.terminal());
        },
        settings.exec);

    double d_sum = 0.0, d_sq = 0.0;
    for (double v : direct) {
        d_sum += v;
        d_sq += v * v;
    }

    DensityReport rep;
    rep.replicas = M;
    rep.mean_weight = weighted.mean_weight;
    rep.weight_se = weighted.weight_se;
    rep.ess = weighted.ess;
    rep.functional = functional;
    rep.mode = settings.mode;
    rep.functional_reweighted.mean = rw_sum / M;
    rep.functional_reweighted.se =
        std::sqrt(std::max(0.0, (rw_sq - rw_sum * rw_sum / M) / (M - 1)) / M);
    rep.functional_direct.mean = d_sum / M;
    rep.functional_direct.se =
        std::sqrt(std::max(0.0, (d_sq - d_sum * d_sum / M) / (M - 1)) / M);
    const double denom = std::sqrt(rep.functional_direct.se * rep.functional_direct.se +
                                   rep.functional_reweighted.se * rep.functional_reweighted.se);
    rep.z_score = denom > 0.0
                      ? (rep.functional_direct.mean - rep.functional_reweighted.mean) / denom
                      : 0.0;
    return rep;
}

}  // namespace oulevy
