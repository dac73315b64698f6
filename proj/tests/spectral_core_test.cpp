#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oulevy/errors.hpp"
#include "oulevy/expr.hpp"
#include "oulevy/numerics.hpp"
#include "oulevy/series.hpp"
#include "oulevy/spectral_core.hpp"
#include "test_support.hpp"

using namespace oulevy;

TEST_CASE("expression evaluator handles the sequence grammar") {
    CHECK(Expr::parse("1+n^2").eval(3) == doctest::Approx(10.0));
    CHECK(Expr::parse("exp(-n^2)").eval(2) == doctest::Approx(std::exp(-4.0)));
    CHECK(Expr::parse("exp(-n^2/4)/n").eval(2) == doctest::Approx(std::exp(-1.0) / 2.0));
    CHECK(Expr::parse("n^-8").eval(2) == doctest::Approx(std::pow(2.0, -8.0)));
    CHECK(Expr::parse("n^4").eval(3) == doctest::Approx(81.0));
    CHECK(Expr::parse("2*n - 1/n").eval(4) == doctest::Approx(7.75));
    CHECK(Expr::parse(" ( n + 1 ) ^ 2 ").eval(2) == doctest::Approx(9.0));
    CHECK_THROWS_AS(Expr::parse("n +"), ConfigError);
    CHECK_THROWS_AS(Expr::parse("foo(n)"), ConfigError);
    CHECK_THROWS_AS(Expr::parse("n) "), ConfigError);
}

TEST_CASE("model invariants are enforced") {
    CHECK_THROWS_AS(SpectralModel({1.0, -1.0}, {1.0, 1.0}, {1.0, 1.0}), InputError);
    CHECK_THROWS_AS(SpectralModel({1.0}, {0.0}, {1.0}), InputError);
    CHECK_THROWS_AS(SpectralModel({1.0}, {1.0}, {0.0}), InputError);
    CHECK_THROWS_AS(SpectralModel({1.0, 2.0}, {1.0}, {1.0, 1.0}), InputError);
}

TEST_CASE("semigroup apply") {
    SUBCASE("t = 0 is the identity") {
        const auto m = testsup::reference_model();
        std::vector<double> x{1, -2, 3, -4, 5, -6, 7, -8};
        CHECK(semigroup_apply(m, Generator::A, 0.0, x) == x);
    }
    SUBCASE("closed form per mode") {
        const SpectralModel m({1.0, 4.0}, {1.0, 4.0}, {1.0, 1.0});
        const auto y = semigroup_apply(m, Generator::A, 1.0, {1.0, 1.0});
        CHECK(y[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
        CHECK(y[1] == doctest::Approx(std::exp(-4.0)).epsilon(1e-14));
    }
    SUBCASE("scalar value") {
        const SpectralModel m({2.0}, {2.0}, {1.0});
        const auto y = semigroup_apply(m, Generator::A, 0.5, {3.0});
        CHECK(y[0] == doctest::Approx(1.103638323514327).epsilon(1e-14));
    }
    SUBCASE("dimension mismatch is an input error") {
        const SpectralModel m({2.0}, {2.0}, {1.0});
        CHECK_THROWS_AS(semigroup_apply(m, Generator::A, 0.5, {1.0, 2.0}), InputError);
        CHECK_THROWS_AS(semigroup_apply(m, Generator::A, -0.1, {1.0}), InputError);
    }
}

TEST_CASE("hs perturbation integral") {
    SUBCASE("zero perturbation gives zero") {
        const SpectralModel m({1.0, 2.0}, {1.0, 2.0}, {1.0, 0.5});
        const auto v = hs_perturbation_integral(m, 1.0);
        CHECK(v.converged);
        CHECK(v.value == 0.0);
    }
    SUBCASE("scalar closed form") {
        const SpectralModel m({2.0}, {3.0}, {0.5});
        const auto v = hs_perturbation_integral(m, 1.0);
        CHECK(v.value == doctest::Approx(0.12271054513890822).epsilon(1e-14));
    }
    SUBCASE("matches quadrature of the per-mode integrand on the reference model") {
        const auto m = testsup::reference_model();
        const auto v = hs_perturbation_integral(m, 1.0);
        const double oracle = testsup::gauss_integrate(
            [&](double t) {
                double s = 0.0;
                for (int n = 0; n < m.dim(); ++n) {
                    const double k = m.a_tilde()[n] - m.a()[n];
                    s += k * k * m.q()[n] * std::exp(-2.0 * m.a()[n] * t);
                }
                return s;
            },
            0.0, 1.0);
        CHECK(std::abs(v.value - oracle) / oracle < 1e-10);
    }
    SUBCASE("nondecreasing in T") {
        const auto m = testsup::reference_model();
        double prev = 0.0;
        for (double T : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            const double v = hs_perturbation_integral(m, T).value;
            CHECK(v >= prev);
            prev = v;
        }
    }
    SUBCASE("documented asymmetry under swapping the generator roles") {
        const auto m = testsup::reference_model();
        const double fwd = hs_perturbation_integral(m, 1.0).value;
        const double rev = hs_perturbation_integral(m.swapped(), 1.0).value;
        CHECK(fwd != rev);  // the decay factor tracks the first generator
    }
    SUBCASE("the rapidly-decaying-q sequences stay summable") {
        // a == 1, atilde = 1 + n^2, q = e^{-n^2}: terms n^4 e^{-n^2} (1 - e^{-2T}) / 2
        SymbolicSequences seq{Expr::parse("1"), Expr::parse("1+n^2"), Expr::parse("exp(-n^2)"),
                              Expr(), 512};
        const auto m = SpectralModel::from_symbolic(seq, 8);
        const auto v = hs_perturbation_integral(m, 1.0);
        CHECK(v.converged);
        CHECK(v.value > 0.0);
    }
}

TEST_CASE("fractional bound") {
    SUBCASE("zero perturbation") {
        const SpectralModel m({1.0, 2.0}, {1.0, 2.0}, {1.0, 1.0});
        CHECK(fractional_bound(m, 0.25).value == 0.0);
    }
    SUBCASE("reference model: sup attained at the first mode") {
        const auto m = testsup::reference_model();
        const auto v = fractional_bound(m, 0.25);
        CHECK(v.converged);
        CHECK(v.value == doctest::Approx(1.0).epsilon(1e-14));  // |1| * 1^{-0.25}
        CHECK_FALSE(v.tail_increasing);                          // terms n^{-2 beta} decrease
    }
    SUBCASE("unbounded perturbation reports a witness") {
        SymbolicSequences seq{Expr::parse("1"), Expr::parse("1+n^2"), Expr::parse("exp(-n^2)"),
                              Expr(), 512};
        const auto m = SpectralModel::from_symbolic(seq, 8);
        const auto v = fractional_bound(m, 0.25);  // terms n^2 * 1
        CHECK_FALSE(v.converged);
        REQUIRE(v.divergence_witness.has_value());
        CHECK(v.divergence_witness->index > kRunStart);
    }
    CHECK_THROWS_AS(fractional_bound(testsup::reference_model(), 1.5), InputError);
}

TEST_CASE("resolvent criterion") {
    SUBCASE("zero perturbation") {
        const SpectralModel m({1.0}, {1.0}, {1.0});
        const auto grid = sector_grid(0.7, 1e-3, 1e3, 31, 3);
        CHECK(resolvent_criterion(m, 0.5, 0.7, grid) == 0.0);
    }
    SUBCASE("scalar hand value at lambda = 1") {
        const SpectralModel m({1.0}, {2.0}, {1.0});
        const std::vector<std::complex<double>> grid{{1.0, 0.0}};
        CHECK(resolvent_criterion(m, 0.5, 0.7, grid) == doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("consistent with the fractional bound on the reference model") {
        const auto m = testsup::reference_model();
        const auto grid = sector_grid(0.7853981633974483, 1e-3, 1e3, 61, 5);
        const double sup = resolvent_criterion(m, 0.25, 0.7853981633974483, grid);
        CHECK(std::isfinite(sup));
        CHECK(sup > 0.0);
        CHECK(fractional_bound(m, 0.25).converged);
    }
    SUBCASE("bad grids are input errors") {
        const SpectralModel m({1.0}, {2.0}, {1.0});
        CHECK_THROWS_AS(resolvent_criterion(m, 0.5, 0.7, {}), InputError);
        const std::vector<std::complex<double>> outside{std::polar(1.0, 1.0)};
        CHECK_THROWS_AS(resolvent_criterion(m, 0.5, 0.7, outside), InputError);
    }
}

TEST_CASE("smoothing constant") {
    SUBCASE("extremal single mode attains (beta/e)^beta") {
        for (double beta : {0.1, 0.25, 0.49}) {
            const double t = 0.5;
            const SpectralModel m({beta / t}, {beta / t}, {1.0});
            const double v = smoothing_constant(m, beta, {t});
            CHECK(v == doctest::Approx(std::pow(beta / std::exp(1.0), beta)).epsilon(1e-13));
        }
    }
    SUBCASE("direct evaluation") {
        const SpectralModel m({1.0}, {1.0}, {1.0});
        CHECK(smoothing_constant(m, 0.5, {1.0}) ==
              doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    }
    SUBCASE("uniform bound over a dense grid") {
        std::vector<double> a;
        for (int i = 0; i < 64; ++i) a.push_back(0.1 * std::pow(10.0, 3.0 * i / 63.0));
        const SpectralModel m(a, a, std::vector<double>(64, 1.0));
        std::vector<double> grid;
        for (int k = 1; k <= 1000; ++k) grid.push_back(k / 1000.0);
        for (double beta : {0.1, 0.25, 0.49}) {
            const double v = smoothing_constant(m, beta, grid);
            CHECK(v <= std::pow(beta / std::exp(1.0), beta) + 1e-12);
        }
    }
}

TEST_CASE("duhamel residual") {
    SUBCASE("identical generators vanish exactly") {
        const SpectralModel m({1.5}, {1.5}, {1.0});
        CHECK(duhamel_residual(m, 1, 1.0) == 0.0);
    }
    SUBCASE("scalar identity") {
        const SpectralModel m({1.0}, {2.0}, {1.0});
        // identity value e^{-2} - e^{-1}; the residual is quadrature-small
        CHECK(duhamel_residual(m, 1, 1.0) < 1e-10);
    }
    SUBCASE("reference model across modes and times") {
        const auto m = testsup::reference_model();
        for (int n = 1; n <= m.dim(); ++n)
            for (double t : {0.1, 0.5, 1.0})
                CHECK(duhamel_residual(m, n, t) < 1e-10);
    }
    SUBCASE("mode out of range") {
        const auto m = testsup::reference_model();
        CHECK_THROWS_AS(duhamel_residual(m, 0, 1.0), InputError);
        CHECK_THROWS_AS(duhamel_residual(m, 9, 1.0), InputError);
    }
}

TEST_CASE("series heuristics") {
    SUBCASE("finite sums never diverge without the heuristic") {
        const auto v = sum_series([](int n) { return static_cast<double>(n); }, 100, false);
        CHECK(v.converged);
        CHECK(v.value == doctest::Approx(5050.0));
    }
    SUBCASE("monotone growth past the run start is flagged") {
        const auto v = sum_series([](int n) { return static_cast<double>(n * n); }, 512, true);
        CHECK_FALSE(v.converged);
        REQUIRE(v.divergence_witness.has_value());
        CHECK(v.divergence_witness->index >= kRunStart + kRunLength);
    }
    SUBCASE("explosion trips immediately") {
        const auto v = sum_series([](int n) { return n == 3 ? 1e13 : 0.5; }, 512, true);
        CHECK_FALSE(v.converged);
        CHECK(v.divergence_witness->index == 3);
    }
    SUBCASE("decaying terms stay convergent") {
        const auto v =
            sum_series([](int n) { return 1.0 / (static_cast<double>(n) * n); }, 512, true);
        CHECK(v.converged);
        CHECK(v.value == doctest::Approx(1.6429828479550965).epsilon(1e-12));
    }
    SUBCASE("overflowing terms count as witnesses") {
        const auto v = sum_series(
            [](int n) { return std::exp(0.5 * n * n) * n * n; }, 512, true);
        CHECK_FALSE(v.converged);
    }
    SUBCASE("the zero series converges") {
        const auto v = sum_series([](int) { return 0.0; }, 512, true);
        CHECK(v.converged);
        CHECK(v.value == 0.0);
    }
}

TEST_CASE("numerics guards") {
    // series branch agrees with the analytic expression across the switch
    for (double x : {1e-12, 1e-9, 1.0000001e-8, 1e-6, 1e-3, 0.1, 1.0}) {
        CHECK(phi1(x) == doctest::Approx(-std::expm1(-x) / x).epsilon(1e-12));
        CHECK(phi_resid(x) >= 0.0);
    }
    CHECK(phi1(0.0) == 1.0);
    // a -> 0 limit of (1 - e^{-2 a t}) / (2 a) is t
    CHECK(decay_integral(2.0 * 1e-12, 3.0) == doctest::Approx(3.0).epsilon(1e-10));
}
