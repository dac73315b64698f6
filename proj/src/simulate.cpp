#include "oulevy/simulate.hpp"

#include <cmath>

#include "oulevy/errors.hpp"
#include "oulevy/numerics.hpp"

namespace oulevy {

std::vector<double> jump_convolution(const SpectralModel& model, Generator which,
                                     const MarkedPointSet& points, double t) {
    std::vector<double> out(model.dim(), 0.0);
    for (size_t i = 0; i < points.count(); ++i) {
        const double tau = points.times[i];
        if (tau > t) break;
        const auto& mark = points.marks[i];
        for (int n = 0; n < model.dim(); ++n)
            out[n] += std::exp(-model.decay(which, n) * (t - tau)) * mark[n];
    }
    return out;
}

std::vector<double> drift_convolution(const SpectralModel& model, Generator which,
                                      const std::vector<double>& b, double t) {
    if (t < 0.0) throw InputError("drift_convolution: t must be >= 0");
    if (static_cast<int>(b.size()) != model.dim())
        throw InputError("drift_convolution: dimension mismatch");
    std::vector<double> out(model.dim());
    for (int n = 0; n < model.dim(); ++n)
        out[n] = b[n] * decay_integral(model.decay(which, n), t);
    return out;
}

std::vector<std::vector<double>> gaussian_channel(const SpectralModel& model, Generator which,
                                                  const TimeGrid& grid,
                                                  const ReplicaStreams& streams,
                                                  std::vector<std::vector<double>>*
                                                      brownian_increments) {
    const int N = model.dim();
    const int K = grid.steps();
    std::vector<std::vector<double>> y(grid.size(), std::vector<double>(N, 0.0));
    if (brownian_increments)
        brownian_increments->assign(N, std::vector<double>(K, 0.0));
    for (int n = 0; n < N; ++n) {
        const double a = model.decay(which, n);
        const double q = model.q()[n];
        CounterRng rng = streams.gaussian(n);
        double x = 0.0;
        for (int k = 0; k < K; ++k) {
            const double dt = grid.times()[k + 1] - grid.times()[k];
            const double ax = a * dt;
            const auto [z1, z2] = rng.normal_pair_at(static_cast<std::uint64_t>(k));
            // Joint draw of (Brownian increment, OU convolution increment):
            //   d_beta = sqrt(dt) z1
            //   g      = sqrt(q dt) (phi1(a dt) z1 + sqrt(phi_resid(a dt)) z2)
            // which reproduces Var g = q dt phi1(2 a dt) and
            // Cov(d_beta, g) = sqrt(q) dt phi1(a dt).
            const double g = std::sqrt(q * dt) *
                             (phi1(ax) * z1 + std::sqrt(phi_resid(ax)) * z2);
            if (brownian_increments) (*brownian_increments)[n][k] = std::sqrt(dt) * z1;
            x = std::exp(-ax) * x + g;
            y[k + 1][n] = x;
        }
    }
    return y;
}

SamplePath simulate_ou_path(const SpectralModel& model, Generator which,
                            const LevyConfig& levy, const TimeGrid& grid,
                            const MarkedPointSet& points, const ReplicaStreams& streams,
                            std::vector<std::vector<double>>* brownian_increments) {
    const int N = model.dim();
    levy.validate(N);
    points.validate(grid.T());
    const std::vector<int> jump_idx = grid.jump_indices(points);  // throws if misaligned

    SamplePath path{grid, {}, {}, points, jump_idx};
    path.values.assign(grid.size(), std::vector<double>(N, 0.0));

    std::vector<std::vector<double>> gauss;
    if (levy.gaussian_enabled)
        gauss = gaussian_channel(model, which, grid, streams, brownian_increments);
    else if (brownian_increments)
        brownian_increments->assign(N, std::vector<double>(grid.steps(), 0.0));

    bool drift_on = false;
    for (double b : levy.drift_b) drift_on = drift_on || (b != 0.0);

    // Compose the channels as (gaussian + jump) + drift with the jump channel
    // accumulated in the same order as jump_convolution, so the three-way
    // decomposition against the closed-form channels is bit-exact.
    size_t next_jump = 0;
    for (int k = 1; k < grid.size(); ++k) {
        const double t = grid.times()[k];
        const bool is_jump = next_jump < jump_idx.size() && jump_idx[next_jump] == k;
        std::vector<double> j_left(N, 0.0);
        for (size_t i = 0; i < points.count() && points.times[i] < t; ++i)
            for (int n = 0; n < N; ++n)
                j_left[n] += std::exp(-model.decay(which, n) * (t - points.times[i])) *
                             points.marks[i][n];
        const std::vector<double> d =
            drift_on ? drift_convolution(model, which, levy.drift_b, t)
                     : std::vector<double>(N, 0.0);
        std::vector<double> v(N, 0.0);
        std::vector<double> pre(N, 0.0);
        for (int n = 0; n < N; ++n) {
            const double g = levy.gaussian_enabled ? gauss[k][n] : 0.0;
            pre[n] = (g + j_left[n]) + d[n];
            const double j = is_jump ? j_left[n] + points.marks[next_jump][n] : j_left[n];
            v[n] = (g + j) + d[n];
        }
        if (is_jump) {
            path.pre_jump.push_back(std::move(pre));
            ++next_jump;
        }
        path.values[k] = std::move(v);
    }
    return path;
}

SamplePath gaussian_convolution(const SpectralModel& model, Generator which,
                                const TimeGrid& grid, const ReplicaStreams& streams,
                                std::vector<std::vector<double>>* brownian_increments) {
    LevyConfig gaussian_only;
    gaussian_only.drift_b.assign(model.dim(), 0.0);
    gaussian_only.gaussian_enabled = true;
    gaussian_only.rate_lambda = 0.0;
    return simulate_ou_path(model, which, gaussian_only, grid, MarkedPointSet{}, streams,
                            brownian_increments);
}

}  // namespace oulevy
