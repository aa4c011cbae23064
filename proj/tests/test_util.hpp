#pragma once

#include <complex>
#include <random>
#include <sstream>

#include <doctest.h>

#include "scalevar/expr.hpp"

namespace testutil {

inline void check_close(std::complex<double> got, std::complex<double> want, double tol = 1e-12) {
    INFO("got " << got.real() << (got.imag() < 0 ? " - " : " + ")
                << std::abs(got.imag()) << "i, want " << want.real()
                << (want.imag() < 0 ? " - " : " + ") << std::abs(want.imag()) << "i");
    CHECK(std::abs(got - want) <= tol);
}

inline void check_close(double got, double want, double tol = 1e-12) {
    INFO("got " << got << ", want " << want);
    CHECK(std::abs(got - want) <= tol);
}

// Random expression over x, y, v built from operations that stay finite on
// bounded inputs (no div/log, powers capped at 3). Used for round-trip and
// evaluation-equivalence properties.
inline scalevar::Expr random_expr(std::mt19937_64& rng, int depth) {
    using scalevar::Expr;
    using scalevar::Var;
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::uniform_int_distribution<int> leaf(0, 3);
    if (depth <= 0) {
        switch (leaf(rng)) {
            case 0: return Expr::variable(Var::X);
            case 1: return Expr::variable(Var::Y);
            case 2: return Expr::variable(Var::V);
            default: return Expr::constant(coeff(rng));
        }
    }
    std::uniform_int_distribution<int> pick(0, 7);
    switch (pick(rng)) {
        case 0: return random_expr(rng, depth - 1) + random_expr(rng, depth - 1);
        case 1: return random_expr(rng, depth - 1) - random_expr(rng, depth - 1);
        case 2: return random_expr(rng, depth - 1) * random_expr(rng, depth - 1);
        case 3: {
            std::uniform_int_distribution<int> ex(0, 3);
            return Expr::pow(random_expr(rng, depth - 1), ex(rng));
        }
        case 4: return -random_expr(rng, depth - 1);
        case 5: return Expr::unary(Expr::UnaryOp::Sin, random_expr(rng, depth - 1));
        case 6: return Expr::unary(Expr::UnaryOp::Cos, random_expr(rng, depth - 1));
        default: return random_expr(rng, 0);
    }
}

}  // namespace testutil
