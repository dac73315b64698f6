#pragma once

#include <cstdint>
#include <vector>

#include "oulevy/levy.hpp"
#include "oulevy/spectral_model.hpp"
#include "oulevy/time_grid.hpp"

namespace oulevy {

// Grid-aligned path with exact jump records.  values[0] = 0 (the process
// starts at 0); at each jump time the pre-jump (left-limit) vector is stored
// so the increment-equals-mark identity can be checked exactly.
struct SamplePath {
    TimeGrid grid;
    std::vector<std::vector<double>> values;     // grid point -> vector of length N
    std::vector<std::vector<double>> pre_jump;   // one left-limit vector per jump
    MarkedPointSet jumps;
    std::vector<int> jump_grid_indices;

    int dim() const { return values.empty() ? 0 : static_cast<int>(values[0].size()); }
    const std::vector<double>& at(int k) const { return values[k]; }
    const std::vector<double>& terminal() const { return values.back(); }
};

// Per-(replica, mode) Gaussian increment streams plus the jump streams,
// all derived from one master seed.  `arm` salts independent experiment arms.
struct ReplicaStreams {
    std::uint64_t master = 0;
    std::uint64_t replica = 0;
    std::uint64_t arm = 0;

    CounterRng gaussian(int mode) const {
        return CounterRng(stream_key(master ^ (arm * 0x9E3779B97F4A7C15ull), replica,
                                     static_cast<std::uint64_t>(mode), RngChannel::gaussian));
    }
    CounterRng jump_times() const {
        return CounterRng(stream_key(master ^ (arm * 0x9E3779B97F4A7C15ull), replica, 0,
                                     RngChannel::jump_times));
    }
    CounterRng jump_marks() const {
        return CounterRng(stream_key(master ^ (arm * 0x9E3779B97F4A7C15ull), replica, 0,
                                     RngChannel::jump_marks));
    }
};

// Exact convolution of the semigroup against the jump measure:
// component n = sum_{tau_i <= t} e^{-a_n (t - tau_i)} xi_{i,n}.  Gridless.
std::vector<double> jump_convolution(const SpectralModel& model, Generator which,
                                     const MarkedPointSet& points, double t);

// Deterministic drift channel: component n = b_n (1 - e^{-a_n t}) / a_n.
std::vector<double> drift_convolution(const SpectralModel& model, Generator which,
                                      const std::vector<double>& b, double t);

// Gaussian channel on the grid via the exact one-step transition.  When
// `brownian_increments` is non-null it receives the standard increments of
// the driving cylindrical Brownian motion, one row per mode, jointly sampled
// with the path (the pair (increment, convolution step) has its exact law).
std::vector<std::vector<double>> gaussian_channel(const SpectralModel& model, Generator which,
                                                  const TimeGrid& grid,
                                                  const ReplicaStreams& streams,
                                                  std::vector<std::vector<double>>*
                                                      brownian_increments);

// Full path: gaussian channel + jump convolution + drift channel, composed
// so the three-way decomposition holds bit-exactly at every grid point.
SamplePath simulate_ou_path(const SpectralModel& model, Generator which,
                            const LevyConfig& levy, const TimeGrid& grid,
                            const MarkedPointSet& points, const ReplicaStreams& streams,
                            std::vector<std::vector<double>>* brownian_increments = nullptr);

// Gaussian-only path (jumps and drift off), same increment consumption.
SamplePath gaussian_convolution(const SpectralModel& model, Generator which,
                                const TimeGrid& grid, const ReplicaStreams& streams,
                                std::vector<std::vector<double>>* brownian_increments = nullptr);

}  // namespace oulevy
