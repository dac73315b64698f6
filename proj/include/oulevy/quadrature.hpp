#pragma once

#include <functional>
#include <vector>

namespace oulevy {

// Adaptive Simpson on [a, b] to absolute tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12, int max_depth = 52);

// Same, but splitting the interval at the given interior breakpoints first
// (for integrands with kinks, e.g. at jump times).
double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           const std::vector<double>& breakpoints, double tol = 1e-12);

}  // namespace oulevy
