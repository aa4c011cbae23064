#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "scalevar/expr.hpp"

namespace scalevar {

/// A real-valued curve on a closed interval [lo, hi]. Either a closed-form
/// expression in x alone (evaluated exactly, abs included) or a sampled grid
/// with linear interpolation between nodes.
///
/// The domain is validated per evaluation, inclusive at both endpoints; the
/// stencil operators in scale_ops.hpp additionally check their own margins at
/// each call so one curve can serve many scales.
class Curve {
public:
    /// Closed-form curve. The expression must depend on x alone (no y, v, or
    /// sderiv); violations raise ParameterError, as do non-finite or empty
    /// interval bounds.
    static Curve from_expression(const Expr& e, double lo, double hi);

    /// Sampled curve through (grid[i], values[i]). Requires at least two
    /// nodes, a strictly increasing finite grid, finite values, and matching
    /// lengths. Evaluation is exact at the nodes, linear between them.
    static Curve from_samples(std::vector<double> grid, std::vector<double> values);

    double lo() const { return lo_; }
    double hi() const { return hi_; }

    /// Evaluate at x ∈ [lo, hi]; outside raises DomainError. A closed form
    /// whose expression leaves the reals (e.g. log of a negative value)
    /// raises EvalError.
    double operator()(double x) const;

    bool is_closed_form() const { return expr_.has_value(); }
    const std::optional<Expr>& expression() const { return expr_; }
    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }

private:
    Curve() = default;
    std::optional<Expr> expr_;
    std::vector<double> grid_;
    std::vector<double> values_;
    double lo_ = 0.0;
    double hi_ = 0.0;
};

/// A complex-valued curve split into real and imaginary parts sharing one
/// domain.
struct ComplexCurve {
    Curve re_part;
    Curve im_part;
};

/// Linear combination sum_k coeff_k * curve_k on the intersection of the
/// domains. All-closed-form inputs produce a closed form (exact); any sampled
/// input produces a curve resampled on the union of the sampled grids.
Curve combination(const std::vector<std::pair<double, Curve>>& parts);

/// Truncated lacunar cosine sum  W(x) = sum_{n=0}^{terms} a^n cos(b^n pi x),
/// the standard generator of curves with Hölder exponent ln(1/a)/ln(b).
/// Requires a in (0,1), b > 1, terms >= 0.
Curve make_weierstrass(double a, double b, int terms, double lo, double hi);

}  // namespace scalevar
