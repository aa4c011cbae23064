#include "scalevar/variational.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "scalevar/detail/stencil.hpp"
#include "scalevar/errors.hpp"
#include "scalevar/scale_ops.hpp"

namespace scalevar {

namespace {

void require_finite_eps(double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw ParameterError("scale must be positive and finite");
    }
}

void require_tols(double zero_tol, double conv_tol) {
    if (!(zero_tol > 0.0) || !std::isfinite(zero_tol)) {
        throw ParameterError("zero_tol must be positive and finite");
    }
    if (!(conv_tol > 0.0) || !std::isfinite(conv_tol)) {
        throw ParameterError("conv_tol must be positive and finite");
    }
}

struct QuadNode {
    double x;
    double w;
};

void append_simpson(double lo, double hi, int n, std::vector<QuadNode>& out) {
    const double h = (hi - lo) / n;
    for (int k = 0; k <= n; ++k) {
        double x = (k == 0) ? lo : (k == n) ? hi : lo + h * k;
        double c = (k == 0 || k == n) ? 1.0 : (k % 2 != 0) ? 4.0 : 2.0;
        out.push_back({x, c * h / 3.0});
    }
}

// Composite Simpson nodes over [a, b]; when the interval straddles the origin
// the rule restarts there so kinked integrands keep the full convergence
// order. Each side gets an even panel count proportional to its length, never
// fewer than two.
std::vector<QuadNode> simpson_nodes(double a, double b, const QuadratureConfig& quad) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw ParameterError("integration interval must be finite with a < b");
    }
    const int n = quad.n_panels;
    if (n < 2 || n % 2 != 0) {
        throw ParameterError("n_panels must be a positive even number");
    }
    std::vector<QuadNode> nodes;
    nodes.reserve(static_cast<size_t>(n) + 4);
    if (a < 0.0 && 0.0 < b) {
        const int half = n / 2;
        int k1 = 1;
        if (half >= 2) {
            const double frac = -a / (b - a);
            k1 = std::clamp(static_cast<int>(std::lround(frac * half)), 1, half - 1);
        }
        const int n1 = 2 * k1;
        const int n2 = std::max(n - n1, 2);
        append_simpson(a, 0.0, n1, nodes);
        append_simpson(0.0, b, n2, nodes);
    } else {
        append_simpson(a, b, n, nodes);
    }
    return nodes;
}

EvalEnv env_along(const Curve& y, double x, double eps) {
    EvalEnv env;
    env.x = x;
    env.y = y(x);
    env.v = scale_derivative(y, x, eps);
    env.eps = eps;
    return env;
}

// Samples t -> fn(t) on a uniform grid over [lo, hi] at spacing <= eps/4 and
// packages the result as a linearly interpolated complex curve. Both
// endpoints are assigned exactly so stencils that reach the boundary of the
// sampling window stay inside the curve domain.
ComplexCurve sample_complex_field(const std::function<Complex(double)>& fn, double lo, double hi,
                                  double eps) {
    const double span = hi - lo;
    int m = static_cast<int>(std::ceil(span / (eps / 4.0)));
    m = std::max(m, 8);
    std::vector<double> grid(static_cast<size_t>(m) + 1);
    std::vector<double> re(grid.size());
    std::vector<double> im(grid.size());
    for (int k = 0; k <= m; ++k) {
        double t = (k == 0) ? lo : (k == m) ? hi : lo + span * (static_cast<double>(k) / m);
        Complex z = fn(t);
        grid[static_cast<size_t>(k)] = t;
        re[static_cast<size_t>(k)] = z.real();
        im[static_cast<size_t>(k)] = z.imag();
    }
    return ComplexCurve{Curve::from_samples(grid, re), Curve::from_samples(std::move(grid), im)};
}

void validate_grid(std::span<const double> grid) {
    if (grid.empty()) {
        throw ParameterError("grid must not be empty");
    }
    for (double x : grid) {
        if (!std::isfinite(x)) {
            throw ParameterError("grid points must be finite");
        }
    }
}

// Quadratic Lagrange extrapolation to scale zero through three samples.
Complex quadratic_at_zero(double e0, double e1, double e2, Complex s0, Complex s1, Complex s2) {
    const double w0 = (e1 * e2) / ((e0 - e1) * (e0 - e2));
    const double w1 = (e0 * e2) / ((e1 - e0) * (e1 - e2));
    const double w2 = (e0 * e1) / ((e2 - e0) * (e2 - e1));
    return w0 * s0 + w1 * s1 + w2 * s2;
}

Complex linear_at_zero(double e1, double e2, Complex s1, Complex s2) {
    return s2 + (s2 - s1) * (e2 / (e1 - e2));
}

}  // namespace

std::vector<double> EpsilonSchedule::scales() const {
    if (!(eps0 > 0.0) || !std::isfinite(eps0)) {
        throw ParameterError("eps0 must be positive and finite");
    }
    if (!(ratio > 0.0) || !(ratio < 1.0)) {
        throw ParameterError("ratio must lie in (0, 1)");
    }
    if (count < 3) {
        throw ParameterError("schedule needs at least 3 scales");
    }
    std::vector<double> out(static_cast<size_t>(count));
    double e = eps0;
    for (int k = 0; k < count; ++k) {
        out[static_cast<size_t>(k)] = e;
        e *= ratio;
    }
    return out;
}

Complex functional_value(const Expr& f, const Curve& y, double a, double b, double eps,
                         const QuadratureConfig& quad) {
    require_finite_eps(eps);
    const auto nodes = simpson_nodes(a, b, quad);
    if (y.lo() > a - eps || y.hi() < b + eps) {
        throw DomainError("curve domain must cover [a-eps, b+eps]");
    }
    Complex acc{0.0, 0.0};
    for (const auto& node : nodes) {
        acc += node.w * eval(f, env_along(y, node.x, eps));
    }
    if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag())) {
        throw EvalError("functional value is not finite");
    }
    return acc;
}

ResidualField el_residual(const Expr& f, const Curve& y, std::span<const double> grid,
                          double eps) {
    require_finite_eps(eps);
    validate_grid(grid);
    const auto [lo_it, hi_it] = std::minmax_element(grid.begin(), grid.end());
    const double gmin = *lo_it;
    const double gmax = *hi_it;
    if (y.lo() > gmin - 2.0 * eps || y.hi() < gmax + 2.0 * eps) {
        throw DomainError("curve domain must cover [min(grid)-2eps, max(grid)+2eps]");
    }

    const Expr df_dy = diff(f, Var::Y);
    const Expr df_dv = diff(f, Var::V);
    auto field_fn = [&](double t) { return eval(df_dv, env_along(y, t, eps)); };
    const ComplexCurve field = sample_complex_field(field_fn, gmin - eps, gmax + eps, eps);

    ResidualField out;
    out.eps = eps;
    out.grid.assign(grid.begin(), grid.end());
    out.values.reserve(grid.size());
    for (double x : grid) {
        Complex direct = eval(df_dy, env_along(y, x, eps));
        Complex momentum = scale_derivative_complex(field, x, eps);
        out.values.push_back(direct - momentum);
    }
    return out;
}

LimitEstimate extrapolate_limit(std::span<const double> scales, std::span<const Complex> samples,
                                double zero_tol, double conv_tol) {
    require_tols(zero_tol, conv_tol);
    if (scales.size() != samples.size()) {
        throw ParameterError("scales and samples must have matching lengths");
    }
    const size_t n = scales.size();
    if (n < 3) {
        throw ParameterError("extrapolation needs at least 3 samples");
    }
    for (size_t k = 0; k < n; ++k) {
        if (!(scales[k] > 0.0) || !std::isfinite(scales[k])) {
            throw ParameterError("scales must be positive and finite");
        }
        if (k > 0 && !(scales[k] < scales[k - 1])) {
            throw ParameterError("scales must be strictly decreasing");
        }
        if (!std::isfinite(samples[k].real()) || !std::isfinite(samples[k].imag())) {
            throw ParameterError("samples must be finite");
        }
    }

    auto quad_through = [&](size_t last) {
        return quadratic_at_zero(scales[last - 2], scales[last - 1], scales[last],
                                 samples[last - 2], samples[last - 1], samples[last]);
    };
    const Complex q_last = quad_through(n - 1);
    const Complex q_prev = (n >= 4) ? quad_through(n - 2)
                                    : linear_at_zero(scales[n - 2], scales[n - 1], samples[n - 2],
                                                     samples[n - 1]);

    LimitEstimate est;
    est.tail_residual = std::abs(q_last - q_prev);
    est.converged = est.tail_residual <= conv_tol;
    est.is_zero = est.converged && std::abs(q_last) <= zero_tol;
    est.value = est.is_zero ? Complex{0.0, 0.0} : q_last;
    return est;
}

LimitEstimate bracket_limit(const std::function<Complex(double)>& sampler,
                            const EpsilonSchedule& schedule, double zero_tol, double conv_tol) {
    const auto scales = schedule.scales();
    std::vector<Complex> samples(scales.size());
    for (size_t k = 0; k < scales.size(); ++k) {
        samples[k] = sampler(scales[k]);
    }
    return extrapolate_limit(scales, samples, zero_tol, conv_tol);
}

std::vector<LimitEstimate> bracket_field(const Expr& f, const Curve& y,
                                         std::span<const double> grid,
                                         const EpsilonSchedule& schedule, double zero_tol,
                                         double conv_tol) {
    const auto scales = schedule.scales();
    validate_grid(grid);
    // One residual sweep per scale; samples regrouped per grid point.
    std::vector<std::vector<Complex>> per_point(grid.size(),
                                                std::vector<Complex>(scales.size()));
    for (size_t k = 0; k < scales.size(); ++k) {
        const ResidualField field = el_residual(f, y, grid, scales[k]);
        for (size_t j = 0; j < grid.size(); ++j) {
            per_point[j][k] = field.values[j];
        }
    }
    std::vector<LimitEstimate> out;
    out.reserve(grid.size());
    for (const auto& samples : per_point) {
        out.push_back(extrapolate_limit(scales, samples, zero_tol, conv_tol));
    }
    return out;
}

VariationDerivative variation_derivative(const Expr& f, const Curve& y, const Curve& h, double a,
                                         double b, double eps, const QuadratureConfig& quad) {
    require_finite_eps(eps);
    const auto nodes = simpson_nodes(a, b, quad);
    if (y.lo() > a - 2.0 * eps || y.hi() < b + 2.0 * eps) {
        throw DomainError("curve domain must cover [a-2eps, b+2eps]");
    }
    if (h.lo() > a - eps || h.hi() < b + eps) {
        throw DomainError("direction domain must cover [a-eps, b+eps]");
    }

    const Expr df_dy = diff(f, Var::Y);
    const Expr df_dv = diff(f, Var::V);
    auto fv_at = [&](double t) { return eval(df_dv, env_along(y, t, eps)); };

    // Every stencil probe lies inside the documented margins, so the momentum
    // field and its product with h are evaluated exactly at the quotient
    // points rather than interpolated; the three-term decomposition then
    // matches a directional difference quotient to roundoff.
    Complex residual_acc{0.0, 0.0};
    Complex boundary_acc{0.0, 0.0};
    Complex remainder_acc{0.0, 0.0};
    for (const auto& node : nodes) {
        const double x = node.x;
        const double hx = h(x);
        const Complex fv_m = fv_at(x - eps);
        const Complex fv_0 = fv_at(x);
        const Complex fv_p = fv_at(x + eps);
        const Complex bf = detail::combine_box((fv_p - fv_0) / eps, (fv_0 - fv_m) / eps);
        const Complex cf = detail::combine_cobox((fv_p - fv_0) / eps, (fv_0 - fv_m) / eps);

        const Complex r = eval(df_dy, env_along(y, x, eps)) - bf;
        residual_acc += node.w * (r * hx);

        const Complex prod_m = fv_m * h(x - eps);
        const Complex prod_0 = fv_0 * hx;
        const Complex prod_p = fv_p * h(x + eps);
        boundary_acc +=
            node.w * detail::combine_box((prod_p - prod_0) / eps, (prod_0 - prod_m) / eps);

        const Complex bh = scale_derivative(h, x, eps);
        const Complex ch = conj_scale_derivative(h, x, eps);
        remainder_acc += node.w * (bf * bh - cf * bh - bf * ch - cf * ch);
    }

    VariationDerivative out;
    out.residual_term = residual_acc;
    out.boundary_term = boundary_acc;
    out.remainder = -(eps / 2.0) * remainder_acc;
    out.functional_derivative =
        out.residual_term + out.boundary_term + Complex{0.0, 1.0} * out.remainder;
    return out;
}

ExtremalReport is_extremal(const Expr& f, const Curve& y, std::span<const double> grid,
                           const EpsilonSchedule& schedule, double zero_tol, double conv_tol) {
    ExtremalReport report;
    report.limits = bracket_field(f, y, grid, schedule, zero_tol, conv_tol);
    const auto scales = schedule.scales();
    report.finest_residuals = el_residual(f, y, grid, scales.back());

    bool all_converged = true;
    bool all_zero = true;
    for (size_t j = 0; j < report.limits.size(); ++j) {
        const LimitEstimate& est = report.limits[j];
        if (!est.converged) {
            all_converged = false;
            if (report.first_offender < 0) {
                report.first_offender = static_cast<int>(j);
            }
            continue;
        }
        report.max_abs_limit = std::max(report.max_abs_limit, std::abs(est.value));
        if (!est.is_zero) {
            all_zero = false;
            if (report.first_offender < 0) {
                report.first_offender = static_cast<int>(j);
            }
        }
    }
    if (!all_converged) {
        report.verdict = ExtremalVerdict::Inconclusive;
    } else if (all_zero) {
        report.verdict = ExtremalVerdict::Extremal;
        report.first_offender = -1;
    } else {
        report.verdict = ExtremalVerdict::NotExtremal;
    }
    return report;
}

}  // namespace scalevar
