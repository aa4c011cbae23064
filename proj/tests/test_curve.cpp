#include <cmath>
#include <vector>

#include <doctest.h>

#include "scalevar/curve.hpp"
#include "scalevar/errors.hpp"
#include "test_util.hpp"

using scalevar::combination;
using scalevar::Curve;
using scalevar::make_weierstrass;
using scalevar::Expr;
using scalevar::parse;
using scalevar::Var;
using testutil::check_close;

TEST_CASE("closed-form curves evaluate their expression with domain checks") {
    const Curve f = Curve::from_expression(parse("x^2"), -2.0, 2.0);
    CHECK(f.is_closed_form());
    CHECK(f.lo() == -2.0);
    CHECK(f.hi() == 2.0);
    check_close(f(1.5), 2.25);
    check_close(f(-2.0), 4.0);  // endpoints are inside the domain
    check_close(f(2.0), 4.0);
    CHECK_THROWS_AS(f(2.0000001), scalevar::DomainError);
    CHECK_THROWS_AS(f(-3.0), scalevar::DomainError);
}

TEST_CASE("closed-form construction validates the expression and interval") {
    CHECK_THROWS_AS(Curve::from_expression(parse("x + y"), 0.0, 1.0), scalevar::ParameterError);
    CHECK_THROWS_AS(Curve::from_expression(parse("v"), 0.0, 1.0), scalevar::ParameterError);
    CHECK_THROWS_AS(Curve::from_expression(parse("sderiv(x)"), 0.0, 1.0),
                    scalevar::ParameterError);
    CHECK_THROWS_AS(Curve::from_expression(parse("x"), 1.0, 1.0), scalevar::ParameterError);
    CHECK_THROWS_AS(Curve::from_expression(parse("x"), 2.0, 1.0), scalevar::ParameterError);
}

TEST_CASE("sampled curves interpolate linearly and hit nodes exactly") {
    const std::vector<double> grid{0.0, 0.5, 1.0, 2.0};
    const std::vector<double> values{1.0, -1.0, 3.0, 3.0};
    const Curve f = Curve::from_samples(grid, values);
    CHECK_FALSE(f.is_closed_form());
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(f(grid[i]) == values[i]);
    check_close(f(0.25), 0.0);
    check_close(f(0.75), 1.0);
    check_close(f(1.7), 3.0);
    CHECK_THROWS_AS(f(-0.1), scalevar::DomainError);
    CHECK_THROWS_AS(f(2.1), scalevar::DomainError);
}

TEST_CASE("sample validation rejects malformed input") {
    CHECK_THROWS_AS(Curve::from_samples({0.0}, {1.0}), scalevar::ParameterError);
    CHECK_THROWS_AS(Curve::from_samples({0.0, 1.0}, {1.0}), scalevar::ParameterError);
    CHECK_THROWS_AS(Curve::from_samples({0.0, 0.0}, {1.0, 2.0}), scalevar::ParameterError);
    CHECK_THROWS_AS(Curve::from_samples({1.0, 0.0}, {1.0, 2.0}), scalevar::ParameterError);
    CHECK_THROWS_AS(Curve::from_samples({0.0, std::nan("")}, {1.0, 2.0}),
                    scalevar::ParameterError);
    CHECK_THROWS_AS(Curve::from_samples({0.0, 1.0}, {1.0, std::nan("")}),
                    scalevar::ParameterError);
}

TEST_CASE("combination of closed forms is a closed form on the overlap") {
    const Curve f = Curve::from_expression(parse("x^2"), -2.0, 2.0);
    const Curve g = Curve::from_expression(parse("x"), -1.0, 3.0);
    const Curve c = combination({{2.0, f}, {-1.0, g}});
    CHECK(c.is_closed_form());
    CHECK(c.lo() == -1.0);
    CHECK(c.hi() == 2.0);
    for (double x : {-1.0, -0.3, 0.0, 0.7, 2.0}) check_close(c(x), 2.0 * x * x - x);
    CHECK_THROWS_AS(c(2.5), scalevar::DomainError);

    const Curve left = Curve::from_expression(parse("x"), 0.0, 1.0);
    const Curve right = Curve::from_expression(parse("x"), 2.0, 3.0);
    CHECK_THROWS_AS(combination({{1.0, left}, {1.0, right}}), scalevar::ParameterError);
    CHECK_THROWS_AS(combination({}), scalevar::ParameterError);
}

TEST_CASE("combination with a sampled part resamples on the union grid") {
    const Curve f = Curve::from_samples({0.0, 1.0, 2.0}, {0.0, 1.0, 4.0});
    const Curve g = Curve::from_expression(parse("x"), 0.0, 2.0);
    const Curve c = combination({{1.0, f}, {3.0, g}});
    CHECK_FALSE(c.is_closed_form());
    // exact at the sampled nodes: f value + 3x
    check_close(c(0.0), 0.0);
    check_close(c(1.0), 4.0);
    check_close(c(2.0), 10.0);
    // linear in between (f interpolates linearly anyway)
    check_close(c(0.5), 0.5 + 1.5);
}

TEST_CASE("weierstrass generator matches its closed-form partial sums") {
    const int terms = 20;
    const double a = 0.5, b = 3.0;
    const Curve w = make_weierstrass(a, b, terms, -1.0, 1.0);

    // geometric-series oracles: cos(0)=1 at x=0, cos(odd*pi)=-1 at x=1
    const double geom = (1.0 - std::pow(a, terms + 1)) / (1.0 - a);
    check_close(w(0.0), geom, 1e-9);
    check_close(w(1.0), -geom, 1e-9);

    // brute-force sum at an interior point
    double expect = 0.0;
    for (int n = 0; n <= terms; ++n)
        expect += std::pow(a, n) * std::cos(std::pow(b, n) * std::acos(-1.0) * 0.37);
    check_close(w(0.37), expect, 1e-9);

    CHECK_THROWS_AS(make_weierstrass(1.5, 3.0, 5, 0.0, 1.0), scalevar::ParameterError);
    CHECK_THROWS_AS(make_weierstrass(0.5, 0.5, 5, 0.0, 1.0), scalevar::ParameterError);
    CHECK_THROWS_AS(make_weierstrass(0.5, 3.0, -1, 0.0, 1.0), scalevar::ParameterError);
}
