#include "oulevy/cameron_martin.hpp"

#include <cmath>

#include "oulevy/errors.hpp"
#include "oulevy/numerics.hpp"
#include "oulevy/quadrature.hpp"
#include "oulevy/simulate.hpp"
#include "oulevy/spectral_core.hpp"

namespace oulevy {

namespace {

// Decay generator and signed prefactor sequence for a direction.
struct DirectionRoles {
    Generator decay;
    Generator other;
};

DirectionRoles roles(CMDirection d) {
    return d == CMDirection::a_to_atilde ? DirectionRoles{Generator::A, Generator::Atilde}
                                         : DirectionRoles{Generator::Atilde, Generator::A};
}

double decay_of(const SpectralModel& m, CMDirection d, int mode) {
    return m.decay(roles(d).decay, mode);
}

// prefactor = (target eigenvalue - source eigenvalue)
double prefactor_of(const SpectralModel& m, CMDirection d, int mode) {
    return m.decay(roles(d).other, mode) - m.decay(roles(d).decay, mode);
}

}  // namespace

const char* to_string(CMDirection d) {
    return d == CMDirection::a_to_atilde ? "a_to_atilde" : "atilde_to_a";
}

std::vector<double> cm_representative_at(const SpectralModel& model, CMDirection direction,
                                         const MarkedPointSet& points,
                                         const std::vector<double>& drift_b, double t) {
    const int N = model.dim();
    if (static_cast<int>(drift_b.size()) != N)
        throw InputError("cm_representative: drift dimension mismatch");
    std::vector<double> u(N, 0.0);
    for (int n = 0; n < N; ++n) {
        const double dec = decay_of(model, direction, n);
        double acc = 0.0;
        for (size_t i = 0; i < points.count() && points.times[i] <= t; ++i)
            acc += std::exp(-dec * (t - points.times[i])) * points.marks[i][n];
        acc += drift_b[n] * decay_integral(dec, t);
        u[n] = prefactor_of(model, direction, n) / std::sqrt(model.q()[n]) * acc;
    }
    return u;
}

std::vector<std::vector<double>> cm_representative(const SpectralModel& model,
                                                   CMDirection direction,
                                                   const MarkedPointSet& points,
                                                   const std::vector<double>& drift_b,
                                                   const std::vector<double>& t_grid) {
    std::vector<std::vector<double>> u(model.dim(),
                                       std::vector<double>(t_grid.size(), 0.0));
    for (size_t k = 0; k < t_grid.size(); ++k) {
        const auto uk = cm_representative_at(model, direction, points, drift_b, t_grid[k]);
        for (int n = 0; n < model.dim(); ++n) u[n][k] = uk[n];
    }
    return u;
}

std::vector<double> cm_discrepancy_at(const SpectralModel& model, CMDirection direction,
                                      const MarkedPointSet& points,
                                      const std::vector<double>& drift_b, double t) {
    const auto r = roles(direction);
    // source = decay generator, destination = the other one
    auto src = jump_convolution(model, r.decay, points, t);
    const auto dst = jump_convolution(model, r.other, points, t);
    const auto src_d = drift_convolution(model, r.decay, drift_b, t);
    const auto dst_d = drift_convolution(model, r.other, drift_b, t);
    for (int n = 0; n < model.dim(); ++n)
        src[n] = (src[n] - dst[n]) + (src_d[n] - dst_d[n]);
    return src;
}

SeriesVerdict cm_l2_norm(const SpectralModel& model, CMDirection direction,
                         const MarkedPointSet& points, const std::vector<double>& drift_b,
                         double T, std::vector<double>* per_mode_terms) {
    if (!(T > 0.0)) throw InputError("cm_l2_norm: T must be > 0");
    const int N = model.dim();
    bool drift_on = false;
    for (double b : drift_b) drift_on = drift_on || (b != 0.0);

    std::vector<double> terms(N, 0.0);
    if (points.count() == 1 && !drift_on) {
        const double s = points.times[0];
        for (int n = 0; n < N; ++n) {
            const double dec = decay_of(model, direction, n);
            const double pref = prefactor_of(model, direction, n);
            const double xi = points.marks[0][n];
            terms[n] = pref * pref / (2.0 * dec * model.q()[n]) *
                       (-std::expm1(-2.0 * dec * (T - s))) * xi * xi;
        }
    } else {
        // cross-jump interaction terms handled by quadrature
        for (int n = 0; n < N; ++n) {
            terms[n] = integrate_piecewise(
                [&](double t) {
                    const auto u = cm_representative_at(model, direction, points, drift_b, t);
                    return u[n] * u[n];
                },
                0.0, T, points.times, 1e-12);
        }
    }
    SeriesVerdict v;
    v.terms_examined = N;
    for (double t : terms) v.value += t;
    if (per_mode_terms) *per_mode_terms = std::move(terms);
    return v;
}

SeriesVerdict cm_l2_scan(const SpectralModel& model, CMDirection direction, double T,
                         double jump_time) {
    if (!model.has_symbolic())
        throw InputError("cm_l2_scan: model has no symbolic sequences");
    if (model.symbolic().xi.empty())
        throw InputError("cm_l2_scan: symbolic sequences lack a jump profile xi");
    if (!(jump_time > 0.0 && jump_time < T))
        throw InputError("cm_l2_scan: jump time must lie in (0, T)");
    const auto& seq = model.symbolic();
    const bool fwd = direction == CMDirection::a_to_atilde;
    return sum_series(
        [&, fwd](int n) {
            const double a = seq.a.eval(n);
            const double at = seq.a_tilde.eval(n);
            const double q = seq.q.eval(n);
            const double xi = seq.xi.eval(n);
            const double dec = fwd ? a : at;
            const double pref = at - a;  // squared below, sign immaterial
            return pref * pref / (2.0 * dec * q) *
                   (-std::expm1(-2.0 * dec * (T - jump_time))) * xi * xi;
        },
        seq.n_max, true);
}

NovikovReport novikov_bound(const SpectralModel& model, double rate, const JumpLaw& law,
                            double T, Generator source) {
    if (!(rate > 0.0)) throw InputError("novikov_bound: rate must be > 0");
    if (!(T > 0.0)) throw InputError("novikov_bound: T must be > 0");
    NovikovReport rep;
    const double a_min = model.a_min(source);
    rep.C_T = decay_integral(2.0 * a_min, T);  // (1 - e^{-2 a_min T}) / (2 a_min)
    rep.required_c = 0.5 * rep.C_T;
    rep.exp_moment_value = exp_moment(law, rep.required_c, model.q());
    rep.satisfied = std::isfinite(rep.exp_moment_value);
    rep.bound_value = rep.satisfied ? std::exp(rate * T * (rep.exp_moment_value - 1.0))
                                    : kInf;
    const double c_star = law.exp_moment_threshold(model.q());
    if (c_star == 0.0) {
        rep.subinterval_T = 0.0;
    } else if (!std::isfinite(c_star) || 4.0 * a_min * c_star >= 1.0) {
        rep.subinterval_T = kInf;  // C_T / 2 < c* for every horizon
    } else {
        // C_{T*} = 2 c*  <=>  e^{-2 a_min T*} = 1 - 4 a_min c*
        rep.subinterval_T = -std::log(1.0 - 4.0 * a_min * c_star) / (2.0 * a_min);
    }
    return rep;
}

NovikovMcEstimate novikov_mc_check(const SpectralModel& model, double rate,
                                   const JumpLaw& law, double T, int draws,
                                   std::uint64_t master_seed) {
    if (draws < 2) throw InputError("novikov_mc_check: need at least 2 draws");
    const double a_min = model.a_min();
    const double half_ct = 0.5 * decay_integral(2.0 * a_min, T);
    double sum = 0.0, sum_sq = 0.0;
    for (int r = 0; r < draws; ++r) {
        ReplicaStreams streams{master_seed, static_cast<std::uint64_t>(r), 0};
        CounterRng trng = streams.jump_times();
        CounterRng mrng = streams.jump_marks();
        const auto z = sample_compound_poisson(rate, law, T, trng, mrng);
        double quad = 0.0;
        for (const auto& mark : z.marks)
            for (int n = 0; n < model.dim(); ++n)
                quad += model.q()[n] * mark[n] * mark[n];
        const double x = std::exp(half_ct * quad);
        sum += x;
        sum_sq += x * x;
    }
    NovikovMcEstimate est;
    est.draws = draws;
    est.mean = sum / draws;
    const double var = (sum_sq - sum * sum / draws) / (draws - 1);
    est.se = std::sqrt(var / draws);
    return est;
}

SeriesVerdict factorisation_check(const SpectralModel& model, double T) {
    if (!(T > 0.0)) throw InputError("factorisation_check: T must be > 0");
    const double t_ref = 0.5 * T;
    return sum_series(
        [&](int n) {
            const double k = model.a_tilde_of(n) - model.a_of(n);
            return k * k * std::exp(-2.0 * model.a_of(n) * t_ref) / model.q_of(n);
        },
        model.series_modes(), model.has_symbolic());
}

CMReport make_cm_report(const SpectralModel& model, CMDirection direction,
                        const MarkedPointSet& points, const std::vector<double>& drift_b,
                        double T, double rate, const JumpLaw& law) {
    CMReport rep;
    rep.direction = direction;
    rep.l2_norm_sq = cm_l2_norm(model, direction, points, drift_b, T, &rep.per_mode_terms);
    rep.representable = rep.l2_norm_sq.converged;
    rep.novikov = novikov_bound(model, rate > 0.0 ? rate : 1.0, law, T,
                                roles(direction).decay);
    return rep;
}

const std::vector<std::string>& example_ids() {
    static const std::vector<std::string> ids{"no-l2", "one-sided", "novikov-fails",
                                              "no-factorisation"};
    return ids;
}

ExampleOutcome reproduce_example(const std::string& id) {
    const double T = 1.0, s = 0.5, lambda = 1.0;
    ExampleOutcome out;
    out.id = id;
    if (id == "no-l2") {
        SymbolicSequences seq{Expr::parse("1"), Expr::parse("1+n^2"), Expr::parse("exp(-n^2)"),
                              Expr::parse("exp(-n^2/4)/n"), 512};
        const auto model = SpectralModel::from_symbolic(seq, 8);
        out.cm_forward = cm_l2_scan(model, CMDirection::a_to_atilde, T, s);
        out.hs = hs_perturbation_integral(model, T);
        out.matches_expected = !out.cm_forward->converged && out.hs->converged;
        out.expected_summary =
            "representative norm diverges while the Gaussian criterion still holds";
    } else if (id == "one-sided") {
        SymbolicSequences seq{Expr::parse("n^4"), Expr::parse("1"), Expr::parse("n^-8"),
                              Expr::parse("n^-7"), 512};
        const auto model = SpectralModel::from_symbolic(seq, 8);
        out.cm_forward = cm_l2_scan(model, CMDirection::a_to_atilde, T, s);
        out.cm_reverse = cm_l2_scan(model, CMDirection::atilde_to_a, T, s);
        out.matches_expected = out.cm_forward->converged && !out.cm_reverse->converged;
        out.expected_summary = "forward direction converges, reverse direction diverges";
    } else if (id == "novikov-fails") {
        const double delta = 0.1, nu = 3.0;
        const SpectralModel model({1.0 + delta}, {1.0}, {1.0});
        const auto law = JumpLaw::student_t(nu, 1);
        // Second moment of the mark is finite (nu > 2), so the mean of the
        // single-jump norm is finite even though every exponential moment blows.
        const double a = model.a()[0];
        const double mean_xi_sq = nu / (nu - 2.0);
        out.expected_l2_norm_sq = delta * delta / (2.0 * a * model.q()[0]) *
                                  (-std::expm1(-2.0 * a * (T - s))) * mean_xi_sq;
        out.novikov = novikov_bound(model, lambda, law, T);
        out.matches_expected =
            std::isfinite(*out.expected_l2_norm_sq) && !out.novikov->satisfied;
        out.expected_summary =
            "mean representative norm finite, exponential moment infinite";
    } else if (id == "no-factorisation") {
        SymbolicSequences seq{Expr::parse("1"), Expr::parse("1+n^2"), Expr::parse("n^-6"),
                              Expr(), 512};
        const auto model = SpectralModel::from_symbolic(seq, 8);
        out.factorisation = factorisation_check(model, T);
        out.matches_expected = !out.factorisation->converged;
        out.expected_summary = "naive Q^{-1/2} factorisation diagnostic diverges";
    } else {
        throw InputError("unknown example id: " + id +
                         " (expected no-l2 | one-sided | novikov-fails | no-factorisation)");
    }
    return out;
}

}  // namespace oulevy
