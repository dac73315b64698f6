// Timing comparison of the replica-parallel kernels against the serial
// reference path.  Both produce bit-identical results (per-replica streams,
// serial reduction); this target only measures wall time.
//
//   ./bench_kernels [replicas]
//
// OU_LEVY_THREADS caps the parallel arm.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "oulevy/girsanov.hpp"
#include "oulevy/parallel.hpp"
#include "oulevy/rigidity.hpp"
#include "oulevy/spectral_model.hpp"

using namespace oulevy;

namespace {

SpectralModel reference_model(int dim) {
    std::vector<double> a(dim), at(dim), q(dim);
    for (int n = 1; n <= dim; ++n) {
        a[n - 1] = static_cast<double>(n) * n;
        at[n - 1] = static_cast<double>(n) * n + 1.0;
        q[n - 1] = 1.0 / (static_cast<double>(n) * n);
    }
    return SpectralModel(a, at, q);
}

template <typename F>
double time_of(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const int replicas = argc > 1 ? std::atoi(argv[1]) : 4000;
    const auto model = reference_model(8);

    LevyConfig levy;
    levy.drift_b.assign(8, 0.0);
    levy.gaussian_enabled = true;
    levy.rate_lambda = 1.0;
    levy.jump_law = JumpLaw::diagonal_gaussian(std::vector<double>(8, 0.5));

    GirsanovSettings gs;
    gs.base_steps = 256;
    gs.replicas = replicas;
    gs.master_seed = 99;

    std::printf("workers available: %d\n", max_threads());
    std::printf("%-28s %10s %10s %8s\n", "kernel", "serial[s]", "parallel[s]", "speedup");

    {
        gs.mode = WeightMode::full_density;
        double w_ser = 0.0, w_par = 0.0;
        gs.exec = ExecMode::serial;
        const double ts = time_of([&] {
            w_ser = estimate_density_weights(model, levy, CMDirection::a_to_atilde, gs)
                        .mean_weight;
        });
        gs.exec = ExecMode::parallel;
        const double tp = time_of([&] {
            w_par = estimate_density_weights(model, levy, CMDirection::a_to_atilde, gs)
                        .mean_weight;
        });
        std::printf("%-28s %10.3f %10.3f %7.2fx%s\n", "density weights", ts, tp, ts / tp,
                    w_ser == w_par ? "" : "  MISMATCH");
    }
    {
        gs.mode = WeightMode::cm_translation;
        double w_ser = 0.0, w_par = 0.0;
        gs.exec = ExecMode::serial;
        const double ts = time_of([&] {
            w_ser = estimate_density_weights(model, levy, CMDirection::a_to_atilde, gs)
                        .mean_weight;
        });
        gs.exec = ExecMode::parallel;
        const double tp = time_of([&] {
            w_par = estimate_density_weights(model, levy, CMDirection::a_to_atilde, gs)
                        .mean_weight;
        });
        std::printf("%-28s %10.3f %10.3f %7.2fx%s\n", "translation weights", ts, tp,
                    ts / tp, w_ser == w_par ? "" : "  MISMATCH");
    }
    {
        RigiditySettings rs;
        rs.base_steps = 256;
        rs.replicas = replicas / 4;
        rs.master_seed = 99;
        std::vector<double> v(8);
        for (int n = 1; n <= 8; ++n) v[n - 1] = 1.0 / n;
        const auto law = JumpLaw::point_mass(v);
        double r_ser = 0.0, r_par = 0.0;
        rs.exec = ExecMode::serial;
        const double ts = time_of(
            [&] { r_ser = rigidity_experiment(model, 1.0, law, rs).max_residual_own; });
        rs.exec = ExecMode::parallel;
        const double tp = time_of(
            [&] { r_par = rigidity_experiment(model, 1.0, law, rs).max_residual_own; });
        std::printf("%-28s %10.3f %10.3f %7.2fx%s\n", "rigidity replicas", ts, tp, ts / tp,
                    r_ser == r_par ? "" : "  MISMATCH");
    }
    return 0;
}
