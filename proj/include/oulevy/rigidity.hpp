#pragma once

#include <cstdint>
#include <vector>

#include "oulevy/levy.hpp"
#include "oulevy/parallel.hpp"
#include "oulevy/simulate.hpp"
#include "oulevy/spectral_model.hpp"

namespace oulevy {

// Predictor-threshold reconstruction: at each grid step the residual against
// the one-step decay of the claimed generator,
//   d_k = x(t_{k+1}) - e^{-a dt} x(t_k) - drift step,
// is declared a jump (with mark d_k) when ||d_k|| > epsilon.  For a pure-jump
// path under its own generator this recovers the true jump record exactly.
MarkedPointSet reconstruct_jumps(const SamplePath& path, const SpectralModel& model,
                                 Generator which, double epsilon,
                                 const std::vector<double>& drift_b = {});

// Extraction of the path's own discontinuity record: times where the stored
// left limit and value differ by more than epsilon, with the difference as
// the mark.  Generator-independent.
MarkedPointSet extract_jump_record(const SamplePath& path, double epsilon);

// Solution-set membership: rebuild the candidate mild solution from the
// path's discontinuity record with the given generator's kernel and return
// the max-over-grid sup-norm deviation.  Zero (to rounding) iff the path is
// the mild solution for that generator and that jump record.
double membership_residual(const SamplePath& path, const SpectralModel& model,
                           Generator which, double epsilon);

struct RigidityReplica {
    double residual_own = 0.0;
    double residual_other = 0.0;
    bool jumps_recovered = false;
    bool paths_equal = false;
    int jump_count = 0;
    double analytic_lower_bound = 0.0;  // first-jump discrimination bound
    double jump_identity_error = 0.0;   // max |(value - left limit) - mark|
};

struct RigidityReport {
    std::vector<RigidityReplica> replicas;
    double max_residual_own = 0.0;
    double min_residual_other_jumpy = 0.0;  // over replicas with >= 1 jump
    bool all_bounds_exceeded = true;        // residual_other > analytic bound
    double max_jump_identity_error = 0.0;
    int replicas_with_jumps = 0;
    bool vacuous = false;  // no jump channel at all (rate 0)
    bool paths_equal_all = true;
};

struct RigiditySettings {
    double T = 1.0;
    int base_steps = 64;
    int replicas = 100;
    std::uint64_t master_seed = 1;
    double epsilon = 0.0;  // <= 0: default 1e-8 * max path norm per replica
    ExecMode exec = ExecMode::parallel;
};

// Pure-jump experiment: simulate under A, check membership in its own
// solution set and against the perturbed generator, verify the
// increment-equals-mark identity, and compare the two paths built from the
// same jump record.
RigidityReport rigidity_experiment(const SpectralModel& model, double rate,
                                   const JumpLaw& law, const RigiditySettings& settings);

}  // namespace oulevy
