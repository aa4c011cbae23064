#include "scalevar/curve.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "scalevar/errors.hpp"

namespace scalevar {

namespace {

void require_interval(double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        std::ostringstream msg;
        msg << "curve domain [" << lo << ", " << hi << "] is not a finite interval";
        throw ParameterError(msg.str());
    }
}

}  // namespace

Curve Curve::from_expression(const Expr& e, double lo, double hi) {
    require_interval(lo, hi);
    if (contains(e, Var::Y) || contains(e, Var::V))
        throw ParameterError("curve expressions must depend on x alone");
    if (contains_scale_deriv(e))
        throw ParameterError("curve expressions cannot contain sderiv(...)");
    Curve c;
    c.expr_ = e;
    c.lo_ = lo;
    c.hi_ = hi;
    return c;
}

Curve Curve::from_samples(std::vector<double> grid, std::vector<double> values) {
    if (grid.size() != values.size())
        throw ParameterError("sample grid and values must have equal length");
    if (grid.size() < 2) throw ParameterError("sampled curves need at least two nodes");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]) || !std::isfinite(values[i]))
            throw ParameterError("sample nodes must be finite");
        if (i > 0 && !(grid[i - 1] < grid[i]))
            throw ParameterError("sample grid must be strictly increasing");
    }
    Curve c;
    c.lo_ = grid.front();
    c.hi_ = grid.back();
    c.grid_ = std::move(grid);
    c.values_ = std::move(values);
    return c;
}

double Curve::operator()(double x) const {
    if (!(x >= lo_ && x <= hi_)) {
        std::ostringstream msg;
        msg << "evaluation point " << x << " outside curve domain [" << lo_ << ", " << hi_ << "]";
        throw DomainError(msg.str());
    }
    if (expr_) {
        const Complex z = eval(*expr_, EvalEnv{.x = x});
        if (z.imag() != 0.0) throw EvalError("curve expression produced a non-real value");
        return z.real();
    }
    const auto it = std::lower_bound(grid_.begin(), grid_.end(), x);
    if (it != grid_.end() && *it == x) return values_[static_cast<std::size_t>(it - grid_.begin())];
    const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
    const double t = (x - grid_[i]) / (grid_[i + 1] - grid_[i]);
    return values_[i] + t * (values_[i + 1] - values_[i]);
}

Curve combination(const std::vector<std::pair<double, Curve>>& parts) {
    if (parts.empty()) throw ParameterError("combination of zero curves");
    double lo = parts.front().second.lo();
    double hi = parts.front().second.hi();
    bool all_closed = true;
    for (const auto& [coeff, curve] : parts) {
        if (!std::isfinite(coeff)) throw ParameterError("combination coefficients must be finite");
        lo = std::max(lo, curve.lo());
        hi = std::min(hi, curve.hi());
        all_closed = all_closed && curve.is_closed_form();
    }
    if (!(lo < hi)) throw ParameterError("combined curve domains do not overlap");

    if (all_closed) {
        std::optional<Expr> sum;
        for (const auto& [coeff, curve] : parts) {
            const Expr term = Expr::constant(coeff) * *curve.expression();
            sum = sum ? *sum + term : term;
        }
        return Curve::from_expression(*sum, lo, hi);
    }

    // Resample on the union of the sampled grids (restricted to the common
    // domain), keeping the endpoints so the full interval stays covered.
    std::set<double> nodes{lo, hi};
    for (const auto& [coeff, curve] : parts) {
        (void)coeff;
        for (double g : curve.grid())
            if (g >= lo && g <= hi) nodes.insert(g);
    }
    std::vector<double> grid(nodes.begin(), nodes.end());
    std::vector<double> values;
    values.reserve(grid.size());
    for (double g : grid) {
        double acc = 0.0;
        for (const auto& [coeff, curve] : parts) acc += coeff * curve(g);
        values.push_back(acc);
    }
    return Curve::from_samples(std::move(grid), std::move(values));
}

Curve make_weierstrass(double a, double b, int terms, double lo, double hi) {
    if (!(a > 0.0 && a < 1.0)) throw ParameterError("weierstrass amplitude must lie in (0,1)");
    if (!(b > 1.0)) throw ParameterError("weierstrass frequency ratio must exceed 1");
    if (terms < 0) throw ParameterError("weierstrass term count must be non-negative");
    const double pi = std::acos(-1.0);
    std::optional<Expr> sum;
    double amp = 1.0;
    double freq = pi;
    for (int n = 0; n <= terms; ++n) {
        const Expr term = Expr::constant(amp) *
                          Expr::unary(Expr::UnaryOp::Cos,
                                      Expr::constant(freq) * Expr::variable(Var::X));
        sum = sum ? *sum + term : term;
        amp *= a;
        freq *= b;
    }
    return Curve::from_expression(*sum, lo, hi);
}

}  // namespace scalevar
