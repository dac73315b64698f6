#include "oulevy/levy.hpp"

#include <algorithm>
#include <cmath>

#include "oulevy/errors.hpp"
#include "oulevy/numerics.hpp"

namespace oulevy {

JumpLaw JumpLaw::diagonal_gaussian(std::vector<double> sigma) {
    for (double s : sigma)
        if (!(s >= 0.0)) throw InputError("jump law: gaussian sigma must be >= 0");
    return JumpLaw{JumpKind::diagonal_gaussian, std::move(sigma), {}, 0.0};
}

JumpLaw JumpLaw::deterministic_profile(std::vector<double> xi) {
    return JumpLaw{JumpKind::deterministic_profile, {}, std::move(xi), 0.0};
}

JumpLaw JumpLaw::student_t(double nu, int dim) {
    if (!(nu > 2.0)) throw InputError("jump law: student t requires nu > 2");
    if (dim < 1) throw InputError("jump law: dim must be >= 1");
    JumpLaw law{JumpKind::scalar_student_t, {}, std::vector<double>(dim, 0.0), nu};
    return law;
}

JumpLaw JumpLaw::point_mass(std::vector<double> v) {
    return JumpLaw{JumpKind::point_mass, {}, std::move(v), 0.0};
}

int JumpLaw::dim() const {
    switch (kind) {
        case JumpKind::diagonal_gaussian: return static_cast<int>(sigma.size());
        default: return static_cast<int>(profile.size());
    }
}

double JumpLaw::exp_moment_threshold(const std::vector<double>& q) const {
    switch (kind) {
        case JumpKind::diagonal_gaussian: {
            double c_star = kInf;
            for (size_t n = 0; n < sigma.size(); ++n) {
                const double v = q.at(n) * sigma[n] * sigma[n];
                if (v > 0.0) c_star = std::min(c_star, 0.5 / v);
            }
            return c_star;
        }
        case JumpKind::scalar_student_t:
            return 0.0;  // E exp(c xi^2) = inf for every c > 0
        case JumpKind::deterministic_profile:
        case JumpKind::point_mass:
            return kInf;
    }
    return 0.0;
}

double exp_moment(const JumpLaw& law, double c, const std::vector<double>& q) {
    if (!(c > 0.0)) throw InputError("exp_moment: c must be > 0");
    switch (law.kind) {
        case JumpKind::diagonal_gaussian: {
            double prod = 1.0;
            for (size_t n = 0; n < law.sigma.size(); ++n) {
                const double f = 1.0 - 2.0 * c * q.at(n) * law.sigma[n] * law.sigma[n];
                if (!(f > 0.0)) return kInf;
                prod *= 1.0 / std::sqrt(f);
            }
            return prod;
        }
        case JumpKind::deterministic_profile:
        case JumpKind::point_mass: {
            double s = 0.0;
            for (size_t n = 0; n < law.profile.size(); ++n)
                s += q.at(n) * law.profile[n] * law.profile[n];
            return std::exp(c * s);
        }
        case JumpKind::scalar_student_t:
            return kInf;
    }
    return kInf;
}

std::vector<double> JumpLaw::sample(CounterRng& rng) const {
    switch (kind) {
        case JumpKind::diagonal_gaussian: {
            std::vector<double> x(sigma.size());
            for (size_t n = 0; n < sigma.size(); ++n) x[n] = sigma[n] * rng.next_normal();
            return x;
        }
        case JumpKind::deterministic_profile:
        case JumpKind::point_mass:
            return profile;
        case JumpKind::scalar_student_t: {
            std::vector<double> x(profile.size(), 0.0);
            x[0] = rng.next_student_t(nu);
            return x;
        }
    }
    return {};
}

void MarkedPointSet::validate(double T) const {
    if (marks.size() != times.size())
        throw InputError("marked point set: times/marks count mismatch");
    for (size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0 && times[i] <= T))
            throw InputError("marked point set: times must lie in (0, T]");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw InputError("marked point set: times must be strictly increasing");
    }
}

MarkedPointSet sample_compound_poisson(double rate, const JumpLaw& law, double T,
                                       CounterRng& time_rng, CounterRng& mark_rng) {
    if (!(rate > 0.0)) throw InputError("sample_compound_poisson: rate must be > 0");
    if (!(T > 0.0)) throw InputError("sample_compound_poisson: T must be > 0");
    const int count = time_rng.next_poisson(rate * T);
    std::vector<double> times(count);
    for (int i = 0; i < count; ++i) times[i] = T * time_rng.next_u01();  // (0, T]
    std::sort(times.begin(), times.end());
    // Coincident times have probability zero; nudge duplicates apart so the
    // strict-increase invariant survives float ties.
    for (int i = 1; i < count; ++i)
        if (times[i] <= times[i - 1])
            times[i] = std::nextafter(times[i - 1], kInf);
    MarkedPointSet z;
    z.times = std::move(times);
    z.marks.reserve(count);
    for (int i = 0; i < count; ++i) z.marks.push_back(law.sample(mark_rng));
    z.validate(T);
    return z;
}

bool LevyConfig::pure_jump() const {
    if (gaussian_enabled) return false;
    for (double b : drift_b)
        if (b != 0.0) return false;
    return true;
}

void LevyConfig::validate(int dim) const {
    if (static_cast<int>(drift_b.size()) != dim)
        throw InputError("levy config: drift dimension mismatch");
    if (rate_lambda < 0.0) throw InputError("levy config: rate must be >= 0");
    if (rate_lambda > 0.0 && jump_law.dim() != dim)
        throw InputError("levy config: jump law dimension mismatch");
}

}  // namespace oulevy
