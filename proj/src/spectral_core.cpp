#include "oulevy/spectral_core.hpp"

#include <cmath>

#include "oulevy/errors.hpp"
#include "oulevy/numerics.hpp"
#include "oulevy/quadrature.hpp"

namespace oulevy {

std::vector<double> semigroup_apply(const SpectralModel& model, Generator which, double t,
                                    const std::vector<double>& x) {
    if (t < 0.0) throw InputError("semigroup_apply: t must be >= 0");
    if (static_cast<int>(x.size()) != model.dim())
        throw InputError("semigroup_apply: dimension mismatch");
    std::vector<double> out(x.size());
    for (int n = 0; n < model.dim(); ++n)
        out[n] = std::exp(-model.decay(which, n) * t) * x[n];
    return out;
}

SeriesVerdict hs_perturbation_integral(const SpectralModel& model, double T) {
    if (!(T > 0.0)) throw InputError("hs_perturbation_integral: T must be > 0");
    const bool symbolic = model.has_symbolic();
    return sum_series(
        [&](int n) {
            const double a = model.a_of(n);
            const double k = model.a_tilde_of(n) - a;
            return k * k * model.q_of(n) * decay_integral(2.0 * a, T);
        },
        model.series_modes(), symbolic);
}

SeriesVerdict fractional_bound(const SpectralModel& model, double beta) {
    if (!(beta > 0.0 && beta < 1.0)) throw InputError("fractional_bound: beta in (0,1)");
    return sup_series(
        [&](int n) {
            const double a = model.a_of(n);
            return std::abs(model.a_tilde_of(n) - a) * std::pow(a, -beta);
        },
        model.series_modes(), model.has_symbolic());
}

std::vector<std::complex<double>> sector_grid(double theta, double mod_min, double mod_max,
                                              int moduli, int rays) {
    if (!(theta > 0.0 && theta < 1.5707963267948966))
        throw InputError("sector_grid: theta in (0, pi/2)");
    if (moduli < 1 || rays < 1 || !(mod_min > 0.0) || !(mod_max >= mod_min))
        throw InputError("sector_grid: bad grid spec");
    std::vector<std::complex<double>> grid;
    grid.reserve(static_cast<size_t>(moduli) * rays);
    for (int r = 0; r < rays; ++r) {
        // arguments strictly inside the sector, symmetric about the real axis
        const double arg = (rays == 1) ? 0.0
                                       : -0.99 * theta + 1.98 * theta * r / (rays - 1);
        for (int i = 0; i < moduli; ++i) {
            const double f = (moduli == 1) ? 0.0 : static_cast<double>(i) / (moduli - 1);
            const double mod = mod_min * std::pow(mod_max / mod_min, f);
            grid.push_back(std::polar(mod, arg));
        }
    }
    return grid;
}

double resolvent_criterion(const SpectralModel& model, double beta, double theta,
                           const std::vector<std::complex<double>>& lambda_grid) {
    if (!(beta > 0.0 && beta < 1.0)) throw InputError("resolvent_criterion: beta in (0,1)");
    if (lambda_grid.empty()) throw InputError("resolvent_criterion: empty grid");
    double sup = 0.0;
    for (const auto& lam : lambda_grid) {
        if (std::abs(std::arg(lam)) >= theta || lam == std::complex<double>(0.0, 0.0))
            throw InputError("resolvent_criterion: lambda outside the open sector");
        double op_norm = 0.0;  // diagonal operator norm of K (lambda + A)^{-1}
        for (int n = 0; n < model.dim(); ++n) {
            const double num = std::abs(model.a_tilde()[n] - model.a()[n]);
            op_norm = std::max(op_norm, num / std::abs(lam + model.a()[n]));
        }
        sup = std::max(sup, std::pow(std::abs(lam), beta) * op_norm);
    }
    return sup;
}

double smoothing_constant(const SpectralModel& model, double beta,
                          const std::vector<double>& t_grid) {
    if (!(beta > 0.0 && beta < 1.0)) throw InputError("smoothing_constant: beta in (0,1)");
    if (t_grid.empty()) throw InputError("smoothing_constant: empty grid");
    double sup = 0.0;
    for (double t : t_grid) {
        if (!(t > 0.0 && t <= 1.0))
            throw InputError("smoothing_constant: grid times must lie in (0,1]");
        double m = 0.0;
        for (int n = 0; n < model.dim(); ++n) {
            const double a = model.a()[n];
            m = std::max(m, std::pow(a, beta) * std::exp(-a * t));
        }
        sup = std::max(sup, std::pow(t, beta) * m);
    }
    return sup;
}

double duhamel_residual(const SpectralModel& model, int mode_1based, double t) {
    if (mode_1based < 1 || mode_1based > model.dim())
        throw InputError("duhamel_residual: mode out of range");
    if (!(t > 0.0)) throw InputError("duhamel_residual: t must be > 0");
    const double a = model.a()[mode_1based - 1];
    const double at = model.a_tilde()[mode_1based - 1];
    const double direct = std::exp(-at * t) - std::exp(-a * t);
    const double convolved = integrate(
        [&](double s) { return std::exp(-at * (t - s)) * (a - at) * std::exp(-a * s); }, 0.0,
        t, 1e-13);
    return std::abs(direct - convolved);
}

}  // namespace oulevy
