#pragma once

#include <cmath>
#include <limits>

namespace oulevy {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// (1 - e^{-x}) / x, continuous at 0.  Series branch keeps the a->0 limits of
// the decay formulas stable: (1-e^{-2a t})/(2a) = t * phi1(2 a t) -> t.
inline double phi1(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - 0.5 * x + x * x / 6.0;
    return -std::expm1(-x) / x;
}

// phi1(2x) - phi1(x)^2.  Positive for x > 0; equals the normalized residual
// variance of the one-step OU increment after conditioning on the Brownian
// increment of the same interval.  Cancellation-prone, hence the series.
inline double phi_resid(double x) {
    if (x < 1e-3) {
        const double x2 = x * x;
        return x2 / 12.0 - x2 * x / 12.0 + x2 * x2 * 17.0 / 360.0;
    }
    const double d = phi1(2.0 * x) - phi1(x) * phi1(x);
    return d > 0.0 ? d : 0.0;
}

// Exact one-step OU transition variance: Var = q * (1-e^{-2 a dt})/(2 a).
inline double ou_step_variance(double a, double q, double dt) {
    return q * dt * phi1(2.0 * a * dt);
}

// \int_0^t e^{-a s} ds = t * phi1(a t).
inline double decay_integral(double a, double t) {
    return t * phi1(a * t);
}

}  // namespace oulevy
