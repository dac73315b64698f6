#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace oulevy {

// Counter-based random streams.
//
// Every stream is a pure function of (master_seed, replica, mode, channel):
// output i is splitmix64(key + (i+1) * gamma).  Streams can be consumed
// either by stateless index (normal_pair_at, used for per-step Gaussian
// increments so refinements and channel decompositions stay aligned) or
// through a stateful cursor (samplers with variable consumption).  Replicas
// never share a stream, which makes replica-parallel runs reproducible
// independent of scheduling.

inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

enum class RngChannel : std::uint64_t {
    gaussian = 1,
    jump_times = 2,
    jump_marks = 3,
    generic = 4,
};

inline std::uint64_t stream_key(std::uint64_t master, std::uint64_t replica,
                                std::uint64_t mode, RngChannel channel) {
    std::uint64_t k = mix64(master ^ 0xA511E9B3u);
    k = mix64(k ^ (replica * kSplitMixGamma));
    k = mix64(k ^ (mode * 0xD1B54A32D192ED03ull));
    k = mix64(k ^ (static_cast<std::uint64_t>(channel) * 0x8CB92BA72F3D8DD7ull));
    return k;
}

class CounterRng {
  public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    std::uint64_t bits_at(std::uint64_t i) const {
        return mix64(key_ + (i + 1) * kSplitMixGamma);
    }

    // Uniform on (0, 1]; never returns 0, so log() is safe.
    double u01_at(std::uint64_t i) const {
        return (static_cast<double>(bits_at(i) >> 11) + 1.0) * 0x1.0p-53;
    }

    // Box-Muller pair from counters (2i, 2i+1).
    std::pair<double, double> normal_pair_at(std::uint64_t i) const {
        const double u1 = u01_at(2 * i);
        const double u2 = u01_at(2 * i + 1);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 6.283185307179586476925286766559 * u2;
        return {r * std::cos(th), r * std::sin(th)};
    }

    // Stateful cursor interface.
    double next_u01() { return u01_at(cursor_++); }
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_u01();
        const double u2 = next_u01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(th);
        have_spare_ = true;
        return r * std::cos(th);
    }

    // Exact Poisson(mean) via unit-rate exponential arrivals.
    int next_poisson(double mean) {
        int count = 0;
        double s = -std::log(next_u01());
        while (s <= mean) {
            ++count;
            s += -std::log(next_u01());
        }
        return count;
    }

    // Marsaglia-Tsang, shape >= 1, unit scale.
    double next_gamma(double shape);

    // Student t with nu > 2 degrees of freedom: Z / sqrt(chi2_nu / nu).
    double next_student_t(double nu) {
        const double z = next_normal();
        const double chi2 = 2.0 * next_gamma(0.5 * nu);
        return z / std::sqrt(chi2 / nu);
    }

  private:
    std::uint64_t key_;
    std::uint64_t cursor_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline double CounterRng::next_gamma(double shape) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = next_u01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace oulevy
