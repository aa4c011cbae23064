#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "scalevar/curve.hpp"
#include "scalevar/errors.hpp"
#include "scalevar/expr.hpp"
#include "scalevar/scale_ops.hpp"
#include "scalevar/variational.hpp"
#include "test_util.hpp"

using scalevar::bracket_field;
using scalevar::bracket_limit;
using scalevar::combination;
using scalevar::Complex;
using scalevar::Curve;
using scalevar::EpsilonSchedule;
using scalevar::extrapolate_limit;
using scalevar::ExtremalVerdict;
using scalevar::functional_value;
using scalevar::is_extremal;
using scalevar::LimitEstimate;
using scalevar::QuadratureConfig;
using scalevar::variation_derivative;
using testutil::check_close;

namespace {

Curve curve_of(const char* text, double lo = -3.0, double hi = 3.0) {
    return Curve::from_expression(scalevar::parse(text), lo, hi);
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        out[static_cast<size_t>(j)] = a + (b - a) * (static_cast<double>(j) / (n - 1));
    }
    return out;
}

// Lagrangian whose momentum term reproduces the scale derivative of |x|
// exactly, making the kinked curve below stationary at every scale.
constexpr const char* kKinkLagrangian = "(v - sderiv(abs(x)))^2";

}  // namespace

TEST_CASE("epsilon schedule generates a validated geometric ladder") {
    const auto scales = EpsilonSchedule::defaults().scales();
    REQUIRE(scales.size() == 8);
    CHECK(scales[0] == 0.1);
    for (size_t k = 1; k < scales.size(); ++k) {
        CHECK(scales[k] == scales[k - 1] * 0.5);  // halving is exact
    }

    CHECK_THROWS_AS(EpsilonSchedule{.eps0 = 0.0}.scales(), scalevar::ParameterError);
    CHECK_THROWS_AS(EpsilonSchedule{.eps0 = -0.1}.scales(), scalevar::ParameterError);
    CHECK_THROWS_AS((EpsilonSchedule{.eps0 = 0.1, .ratio = 1.0}).scales(),
                    scalevar::ParameterError);
    CHECK_THROWS_AS((EpsilonSchedule{.eps0 = 0.1, .ratio = 0.0}).scales(),
                    scalevar::ParameterError);
    CHECK_THROWS_AS((EpsilonSchedule{.eps0 = 0.1, .ratio = 0.5, .count = 2}).scales(),
                    scalevar::ParameterError);
}

TEST_CASE("functional value matches closed-form integrals") {
    const Curve line = curve_of("1 + 2 * x");
    const Curve vee = curve_of("abs(x)");
    const Curve square = curve_of("x^2");

    // Constant integrand: exactly the interval length.
    check_close(functional_value(scalevar::parse("1"), line, -1.0, 2.0, 0.1), Complex{3.0, 0.0});

    // int_{-1}^{1} (x + |x|^2) dx = 2/3; the x part cancels by symmetry.
    check_close(functional_value(scalevar::parse("x + y^2"), vee, -1.0, 1.0, 0.1),
                Complex{2.0 / 3.0, 0.0}, 1e-9);

    // The scale derivative of a straight line is its slope at every scale,
    // so int v^2 over [0,1] is slope^2.
    check_close(functional_value(scalevar::parse("v^2"), line, 0.0, 1.0, 0.05),
                Complex{4.0, 0.0});

    // Stationary kinked Lagrangian: the integrand vanishes identically, and
    // the quadrature must preserve that exactly.
    const Complex at_kink =
        functional_value(scalevar::parse(kKinkLagrangian), vee, -1.0, 1.0, 0.1);
    CHECK(at_kink == Complex{0.0, 0.0});
}

TEST_CASE("functional quadrature converges under panel doubling") {
    const Curve square = curve_of("x^2");
    const scalevar::Expr f = scalevar::parse("exp(y) + v^2");
    const Complex coarse = functional_value(f, square, 0.0, 1.0, 0.05, {.n_panels = 256});
    const Complex fine = functional_value(f, square, 0.0, 1.0, 0.05, {.n_panels = 512});
    CHECK(std::abs(coarse - fine) < 1e-8);

    // Asymmetric interval straddling the origin: the split rule must keep
    // Simpson accuracy on both sides.
    const Complex lop = functional_value(f, square, -0.3, 1.0, 0.05, {.n_panels = 512});
    const Complex lop_fine = functional_value(f, square, -0.3, 1.0, 0.05, {.n_panels = 1024});
    CHECK(std::abs(lop - lop_fine) < 1e-8);
}

TEST_CASE("functional value validates inputs") {
    const Curve narrow = Curve::from_expression(scalevar::parse("x"), 0.0, 1.0);
    const scalevar::Expr f = scalevar::parse("v");
    CHECK_THROWS_AS(functional_value(f, narrow, 0.0, 1.0, 0.1), scalevar::DomainError);
    const Curve wide = curve_of("x");
    CHECK_THROWS_AS(functional_value(f, wide, 1.0, 0.0, 0.1), scalevar::ParameterError);
    CHECK_THROWS_AS(functional_value(f, wide, 0.0, 1.0, 0.0), scalevar::ParameterError);
    CHECK_THROWS_AS(functional_value(f, wide, 0.0, 1.0, 0.1, {.n_panels = 3}),
                    scalevar::ParameterError);
    CHECK_THROWS_AS(functional_value(f, wide, 0.0, 1.0, 0.1, {.n_panels = 0}),
                    scalevar::ParameterError);
}

TEST_CASE("residual vanishes identically for the kinked stationary pair") {
    const Curve vee = curve_of("abs(x)");
    const scalevar::Expr f = scalevar::parse(kKinkLagrangian);
    const auto grid = linspace(-0.9, 0.9, 7);
    for (double eps : EpsilonSchedule::defaults().scales()) {
        const auto field = scalevar::el_residual(f, vee, grid, eps);
        REQUIRE(field.values.size() == grid.size());
        CHECK(field.eps == eps);
        for (const Complex& r : field.values) {
            CHECK(r == Complex{0.0, 0.0});  // exact: both paths share one stencil
        }
    }
}

TEST_CASE("residual of a velocity-free integrand is its y-gradient") {
    // d/dy (x + y^2) = 2y and the momentum term is identically zero, so the
    // residual equals 2|x| exactly at every scale.
    const Curve vee = curve_of("abs(x)");
    const scalevar::Expr g = scalevar::parse("x + y^2");
    const auto grid = linspace(-1.0, 1.0, 9);
    for (double eps : {0.1, 0.013}) {
        const auto field = scalevar::el_residual(g, vee, grid, eps);
        for (size_t j = 0; j < grid.size(); ++j) {
            CHECK(field.values[j] == Complex{2.0 * std::abs(grid[j]), 0.0});
        }
    }
}

TEST_CASE("residual reduces to the classical Euler-Lagrange operator") {
    // f = v^2 + y^2 - 2xy along y = x^2: the momentum field is affine, so the
    // discrete residual equals (2y - 2x) - 4 exactly, independent of scale.
    const Curve square = curve_of("x^2");
    const scalevar::Expr f = scalevar::parse("v^2 + y^2 - 2 * x * y");
    const auto grid = linspace(0.2, 0.8, 4);
    for (double eps : {0.1, 0.004}) {
        const auto field = scalevar::el_residual(f, square, grid, eps);
        for (size_t j = 0; j < grid.size(); ++j) {
            const double x = grid[j];
            const double classical = 2.0 * x * x - 2.0 * x - 4.0;
            check_close(field.values[j], Complex{classical, 0.0}, 1e-10);
        }
    }

    // Cubic curve: the limit of the residual recovers the classical operator
    // f_y - (f_v)' = (2y - 2x) - 6v' -> 2x^3 - 2x - 12x as the scale shrinks.
    const Curve cubic = curve_of("x^3");
    const EpsilonSchedule schedule{.eps0 = 0.05, .ratio = 0.5, .count = 6};
    const auto limits = bracket_field(f, cubic, grid, schedule);
    for (size_t j = 0; j < grid.size(); ++j) {
        const double x = grid[j];
        const double classical = 2.0 * x * x * x - 2.0 * x - 12.0 * x;
        REQUIRE(limits[j].converged);
        check_close(limits[j].value, Complex{classical, 0.0}, 5e-3);
    }
}

TEST_CASE("residual validates domains and rejects opaque derivatives") {
    const scalevar::Expr f = scalevar::parse("v^2");
    const Curve narrow = Curve::from_expression(scalevar::parse("x"), -1.0, 1.0);
    const std::vector<double> grid{-0.9, 0.9};
    // Needs two scale margins on each side.
    CHECK_THROWS_AS(scalevar::el_residual(f, narrow, grid, 0.1), scalevar::DomainError);
    const Curve wide = curve_of("x");
    CHECK_THROWS_AS(scalevar::el_residual(f, wide, grid, 0.0), scalevar::ParameterError);
    CHECK_THROWS_AS(scalevar::el_residual(f, wide, std::vector<double>{}, 0.1),
                    scalevar::ParameterError);
    CHECK_THROWS_AS(scalevar::el_residual(scalevar::parse("abs(y)"), wide, grid, 0.1),
                    scalevar::UnsupportedError);
}

TEST_CASE("limit filter recovers known limits and snaps exact zeros") {
    const auto schedule = EpsilonSchedule::defaults();

    // Samples proportional to the scale vanish in the limit and are snapped
    // to an exact zero.
    const auto vanishing = bracket_limit([](double e) { return Complex{e, 0.0}; }, schedule);
    CHECK(vanishing.converged);
    CHECK(vanishing.is_zero);
    CHECK(vanishing.value == Complex{0.0, 0.0});

    // A finite offset survives the filter.
    const auto offset = bracket_limit([](double e) { return Complex{2.0 + e, 0.0}; }, schedule);
    CHECK(offset.converged);
    CHECK_FALSE(offset.is_zero);
    check_close(offset.value, Complex{2.0, 0.0});

    // Scale derivative of x^2 at 0.3 carries a -i*eps tail that the filter
    // strips, leaving the classical derivative.
    const Curve square = curve_of("x^2");
    const auto deriv = bracket_limit(
        [&](double e) { return scalevar::scale_derivative(square, 0.3, e); }, schedule);
    CHECK(deriv.converged);
    check_close(deriv.value, Complex{0.6, 0.0});

    // Quadratic-in-scale families are reproduced exactly by the filter.
    const Complex c{1.0, 2.0};
    const auto quad = bracket_limit(
        [&](double e) { return c - Complex{3.0, 0.5} * e + Complex{0.5, 0.0} * e * e; },
        schedule);
    CHECK(quad.converged);
    check_close(quad.value, c, 1e-13);
}

TEST_CASE("limit filter never declares a noisy family zero") {
    const auto scales = EpsilonSchedule{.eps0 = 0.1, .ratio = 0.5, .count = 6}.scales();
    std::vector<Complex> samples(scales.size());
    for (size_t k = 0; k < scales.size(); ++k) {
        samples[k] = Complex{1e-7 * std::cos(1.0 / scales[k]), 0.0};
    }
    const auto est = extrapolate_limit(scales, samples, 1e-6, 1e-9);
    CHECK_FALSE(est.converged);
    CHECK_FALSE(est.is_zero);  // tiny but non-convergent: not a zero
    CHECK(est.value != Complex{0.0, 0.0});
    CHECK(est.tail_residual > 1e-9);
}

TEST_CASE("limit filter validates its inputs") {
    const std::vector<double> scales{0.1, 0.05, 0.025};
    const std::vector<Complex> samples{{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}};
    CHECK_THROWS_AS(extrapolate_limit(scales, std::vector<Complex>{{1.0, 0.0}}, 1e-6, 1e-6),
                    scalevar::ParameterError);
    CHECK_THROWS_AS(
        extrapolate_limit(std::vector<double>{0.1, 0.05}, std::vector<Complex>(2), 1e-6, 1e-6),
        scalevar::ParameterError);
    CHECK_THROWS_AS(
        extrapolate_limit(std::vector<double>{0.1, 0.1, 0.05}, std::vector<Complex>(3), 1e-6,
                          1e-6),
        scalevar::ParameterError);
    CHECK_THROWS_AS(
        extrapolate_limit(std::vector<double>{0.1, 0.05, -0.01}, std::vector<Complex>(3), 1e-6,
                          1e-6),
        scalevar::ParameterError);
    CHECK_THROWS_AS(extrapolate_limit(scales, samples, 0.0, 1e-6), scalevar::ParameterError);
    CHECK_THROWS_AS(extrapolate_limit(scales, samples, 1e-6, 0.0), scalevar::ParameterError);
    std::vector<Complex> bad = samples;
    bad[1] = Complex{std::nan(""), 0.0};
    CHECK_THROWS_AS(extrapolate_limit(scales, bad, 1e-6, 1e-6), scalevar::ParameterError);
}

TEST_CASE("limit filter is linear and multiplicative on affine families") {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    const auto schedule = EpsilonSchedule::defaults();

    for (int trial = 0; trial < 20; ++trial) {
        const Complex c1{coeff(rng), coeff(rng)};
        const Complex d1{coeff(rng), coeff(rng)};
        const Complex c2{coeff(rng), coeff(rng)};
        const Complex d2{coeff(rng), coeff(rng)};
        auto s1 = [&](double e) { return c1 + d1 * e; };
        auto s2 = [&](double e) { return c2 + d2 * e; };

        const Complex b1 = bracket_limit(s1, schedule).value;
        const Complex b2 = bracket_limit(s2, schedule).value;
        check_close(b1, c1, 1e-10);
        check_close(b2, c2, 1e-10);

        // Product of affine families is quadratic in the scale, which the
        // filter resolves exactly; the limit multiplies.
        const auto prod = bracket_limit([&](double e) { return s1(e) * s2(e); }, schedule);
        CHECK(std::abs(prod.value - b1 * b2) <= 1e-8);

        // Linearity under a fixed complex combination.
        const Complex alpha{0.7, -0.3};
        const Complex beta{-1.2, 0.4};
        const auto combo =
            bracket_limit([&](double e) { return alpha * s1(e) + beta * s2(e); }, schedule);
        check_close(combo.value, alpha * b1 + beta * b2, 1e-10);
    }
}

TEST_CASE("residual limits recover the quadratic-curve constant") {
    // f = v^2 along y = x^2: residual -box(2*box y) -> -2 y'' = -4.
    const Curve square = curve_of("x^2");
    const auto grid = linspace(-1.0, 1.0, 9);
    const auto limits = bracket_field(scalevar::parse("v^2"), square, grid,
                                      EpsilonSchedule::defaults(), 1e-6, 1e-6);
    REQUIRE(limits.size() == grid.size());
    for (const auto& est : limits) {
        REQUIRE(est.converged);
        CHECK_FALSE(est.is_zero);
        check_close(est.value, Complex{-4.0, 0.0}, 1e-5);
    }
}

TEST_CASE("residual limits flag the kinked pair as exactly stationary") {
    const Curve vee = curve_of("abs(x)");
    const auto grid = linspace(-1.0, 1.0, 9);
    const auto limits =
        bracket_field(scalevar::parse(kKinkLagrangian), vee, grid, EpsilonSchedule::defaults());
    for (const auto& est : limits) {
        CHECK(est.converged);
        CHECK(est.is_zero);
        CHECK(est.value == Complex{0.0, 0.0});
        CHECK(est.tail_residual == 0.0);
    }
}

TEST_CASE("residual limits of the constraint integrand follow 2|x|") {
    const Curve vee = curve_of("abs(x)");
    const auto grid = linspace(-1.0, 1.0, 9);
    const auto limits =
        bracket_field(scalevar::parse("x + y^2"), vee, grid, EpsilonSchedule::defaults());
    for (size_t j = 0; j < grid.size(); ++j) {
        REQUIRE(limits[j].converged);
        const double expected = 2.0 * std::abs(grid[j]);
        if (grid[j] == 0.0) {
            CHECK(limits[j].is_zero);
            CHECK(limits[j].value == Complex{0.0, 0.0});
        } else {
            CHECK(std::abs(limits[j].value - Complex{expected, 0.0}) <= 1e-4);
        }
    }
}

TEST_CASE("variation derivative is exactly zero in the zero direction") {
    const Curve square = curve_of("x^2");
    const Curve zero = curve_of("0");
    const auto d = variation_derivative(scalevar::parse("v^2 + y^2"), square, zero, 0.0, 1.0,
                                        0.05);
    CHECK(d.functional_derivative == Complex{0.0, 0.0});
    CHECK(d.residual_term == Complex{0.0, 0.0});
    CHECK(d.boundary_term == Complex{0.0, 0.0});
    CHECK(d.remainder == Complex{0.0, 0.0});
}

TEST_CASE("variation derivative is homogeneous in the direction") {
    const Curve square = curve_of("x^2");
    const Curve h = curve_of("x - x^2");
    const Curve h2 = curve_of("2 * (x - x^2)");
    const scalevar::Expr f = scalevar::parse("v^2 + y^2");
    const auto d1 = variation_derivative(f, square, h, 0.0, 1.0, 0.05);
    const auto d2 = variation_derivative(f, square, h2, 0.0, 1.0, 0.05);
    // Doubling the direction doubles each term bitwise: every intermediate
    // quantity scales by an exact power of two.
    CHECK(d2.residual_term == 2.0 * d1.residual_term);
    CHECK(d2.boundary_term == 2.0 * d1.boundary_term);
    CHECK(d2.remainder == 2.0 * d1.remainder);

    // Decomposition contract.
    check_close(d1.functional_derivative,
                d1.residual_term + d1.boundary_term + Complex{0.0, 1.0} * d1.remainder, 0.0);
}

TEST_CASE("variation derivative is additive in the direction") {
    const Curve square = curve_of("x^2");
    const Curve h1 = curve_of("x - x^2");
    const Curve h2 = curve_of("sin(x) * (1 - x)");
    const Curve h_sum = combination({{1.0, h1}, {1.0, h2}});
    const scalevar::Expr f = scalevar::parse("v^2 + y^2");
    const auto a = variation_derivative(f, square, h1, 0.0, 1.0, 0.05);
    const auto b = variation_derivative(f, square, h2, 0.0, 1.0, 0.05);
    const auto s = variation_derivative(f, square, h_sum, 0.0, 1.0, 0.05);
    check_close(s.functional_derivative, a.functional_derivative + b.functional_derivative,
                1e-10);
}

TEST_CASE("variation derivative matches a directional difference quotient") {
    // Phi(t) = functional at y + t h is an exact quadratic in t here, so its
    // central difference equals Phi'(0) up to roundoff; the decomposition
    // must reproduce it within the auxiliary-grid interpolation error.
    const Curve square = curve_of("x^2");
    const Curve h = curve_of("x - x^2");
    const scalevar::Expr f = scalevar::parse("v^2 + y^2");
    const double eps = 0.05;
    const auto d = variation_derivative(f, square, h, 0.0, 1.0, eps);

    const double delta = 1e-5;
    auto phi = [&](double t) {
        const Curve bumped = combination({{1.0, square}, {t, h}});
        return functional_value(f, bumped, 0.0, 1.0, eps);
    };
    const Complex slope = (phi(delta) - phi(-delta)) / (2.0 * delta);
    CHECK(std::abs(d.functional_derivative - slope) <= 1e-9);
}

TEST_CASE("variation derivative boundary and remainder fade with the scale") {
    const Curve square = curve_of("x^2");
    const Curve h = curve_of("x - x^2");
    const scalevar::Expr f = scalevar::parse("v^2 + y^2");
    // h vanishes at both endpoints, so the boundary term is first order in
    // the scale (here it tracks 2*eps) and the remainder second order.
    double prev_boundary = 0.0;
    double prev_remainder = 0.0;
    bool first = true;
    for (double eps : {0.1, 0.05, 0.025, 0.0125}) {
        const auto d = variation_derivative(f, square, h, 0.0, 1.0, eps);
        const double bnd = std::abs(d.boundary_term);
        const double rem = std::abs(d.remainder);
        CHECK(bnd <= 3.0 * eps);
        CHECK(rem <= 5.0 * eps * eps);
        if (!first) {
            CHECK(bnd <= prev_boundary + 1e-12);
            CHECK(rem <= prev_remainder + 1e-12);
        }
        prev_boundary = bnd;
        prev_remainder = rem;
        first = false;
    }
}

TEST_CASE("variation derivative vanishes identically for the stationary kink") {
    const Curve vee = curve_of("abs(x)");
    const Curve bump = curve_of("1 - x^2");  // vanishes at both ends of [-1,1]
    const auto d = variation_derivative(scalevar::parse(kKinkLagrangian), vee, bump, -1.0, 1.0,
                                        0.1);
    CHECK(d.functional_derivative == Complex{0.0, 0.0});
    CHECK(d.residual_term == Complex{0.0, 0.0});
    CHECK(d.boundary_term == Complex{0.0, 0.0});
    CHECK(d.remainder == Complex{0.0, 0.0});
}

TEST_CASE("variation derivative validates both curve domains") {
    const scalevar::Expr f = scalevar::parse("v^2");
    const Curve narrow = Curve::from_expression(scalevar::parse("x"), -0.05, 1.05);
    const Curve wide = curve_of("x");
    // Base curve needs two scale margins, direction needs one.
    CHECK_THROWS_AS(variation_derivative(f, narrow, wide, 0.0, 1.0, 0.1), scalevar::DomainError);
    CHECK_THROWS_AS(variation_derivative(f, wide, narrow, 0.0, 1.0, 0.1), scalevar::DomainError);
    const Curve barely = Curve::from_expression(scalevar::parse("x"), -0.1, 1.1);
    CHECK_NOTHROW(variation_derivative(f, wide, barely, 0.0, 1.0, 0.1));
}

TEST_CASE("extremality verdicts cover all three outcomes") {
    const auto grid = linspace(-1.0, 1.0, 9);
    const auto schedule = EpsilonSchedule::defaults();

    // Straight lines make v^2 stationary: residual is exactly zero.
    const Curve line = curve_of("1 + 2 * x");
    const auto line_report =
        is_extremal(scalevar::parse("v^2"), line, linspace(0.0, 1.0, 11), schedule);
    CHECK(line_report.verdict == ExtremalVerdict::Extremal);
    CHECK(line_report.max_abs_limit == 0.0);
    CHECK(line_report.first_offender == -1);
    CHECK(line_report.finest_residuals.values.size() == 11);

    // The kinked pair is stationary at every scale.
    const Curve vee = curve_of("abs(x)");
    const auto kink_report = is_extremal(scalevar::parse(kKinkLagrangian), vee, grid, schedule);
    CHECK(kink_report.verdict == ExtremalVerdict::Extremal);
    CHECK(kink_report.max_abs_limit == 0.0);

    // The velocity-free integrand is not stationary along |x|: the first
    // grid point already carries residual 2.
    const auto g_report = is_extremal(scalevar::parse("x + y^2"), vee, grid, schedule);
    CHECK(g_report.verdict == ExtremalVerdict::NotExtremal);
    CHECK(g_report.first_offender == 0);
    CHECK(g_report.max_abs_limit > 1.0);

    // A mesh-scale noisy sampled curve defeats the limit filter, which must
    // report that honestly instead of guessing either way.
    const int n = 2000;
    std::vector<double> xs(static_cast<size_t>(n) + 1);
    std::vector<double> ys(xs.size());
    for (int k = 0; k <= n; ++k) {
        const double x = -1.5 + 3.0 * (static_cast<double>(k) / n);
        xs[static_cast<size_t>(k)] = x;
        ys[static_cast<size_t>(k)] = x + 1e-4 * std::sin(12345.0 * k);
    }
    const Curve noisy = Curve::from_samples(xs, ys);
    const auto noisy_report = is_extremal(scalevar::parse("v^2"), noisy,
                                          std::vector<double>{-0.5, 0.0, 0.5}, schedule);
    CHECK(noisy_report.verdict == ExtremalVerdict::Inconclusive);
    CHECK(noisy_report.first_offender >= 0);
}

TEST_CASE("extremality honours the zero tolerance") {
    // Residual is the constant 1e-7: zero under the default tolerance, a
    // genuine obstruction under a tighter one.
    const Curve line = curve_of("x");
    const scalevar::Expr f = scalevar::parse("v^2 + 0.0000001 * y");
    const auto grid = linspace(0.0, 1.0, 5);
    const auto schedule = EpsilonSchedule::defaults();
    const auto loose = is_extremal(f, line, grid, schedule, 1e-6, 1e-6);
    CHECK(loose.verdict == ExtremalVerdict::Extremal);
    const auto tight = is_extremal(f, line, grid, schedule, 1e-9, 1e-6);
    CHECK(tight.verdict == ExtremalVerdict::NotExtremal);
}
