#include "oulevy/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "oulevy/errors.hpp"

namespace oulevy {

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa, double b,
               double fb, double m, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa, double b,
             double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, fa, m, fm, lm, flm);
    const double right = simpson(f, m, fm, b, fb, rm, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 int max_depth) {
    if (!(b >= a)) throw InputError("integrate: empty interval");
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    return adapt(f, a, fa, b, fb, m, fm, simpson(f, a, fa, b, fb, m, fm), tol, max_depth);
}

double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           const std::vector<double>& breakpoints, double tol) {
    std::vector<double> cuts{a};
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        if (cuts[i + 1] > cuts[i]) total += integrate(f, cuts[i], cuts[i + 1], tol);
    return total;
}

}  // namespace oulevy
