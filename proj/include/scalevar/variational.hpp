#pragma once

#include <functional>
#include <span>
#include <vector>

#include "scalevar/curve.hpp"
#include "scalevar/expr.hpp"

namespace scalevar {

/// Geometric ladder of scales eps_k = eps0 * ratio^k, k = 0..count-1, used
/// everywhere a limit eps -> 0 is probed.
struct EpsilonSchedule {
    double eps0 = 0.1;
    double ratio = 0.5;
    int count = 8;

    static EpsilonSchedule defaults() { return {}; }

    /// The scales in decreasing order. Throws ParameterError unless
    /// eps0 > 0, ratio in (0,1), count >= 3.
    std::vector<double> scales() const;
};

/// Composite-Simpson settings. n_panels counts subintervals and must be even
/// and positive. When the integration interval straddles 0 the rule is split
/// there (integrands built from |x|-like curves kink at the origin), with at
/// least two subintervals per side.
struct QuadratureConfig {
    int n_panels = 256;
};

/// Outcome of filtering an eps-family through the limit operator: the
/// extrapolated limit, whether the last two extrapolants agreed to the
/// convergence tolerance, their disagreement, and whether the limit was
/// declared zero (in which case value is exactly 0).
struct LimitEstimate {
    Complex value{0.0, 0.0};
    bool converged = false;
    double tail_residual = 0.0;
    bool is_zero = false;
};

/// Euler–Lagrange residual values over a grid at one scale.
struct ResidualField {
    std::vector<double> grid;
    std::vector<Complex> values;
    double eps = 0.0;
};

/// Simpson approximation of the action integral
///   int_a^b f(x, y(x), box_eps y(x)) dx
/// with complex values. Requires y.domain to cover [a-eps, b+eps].
Complex functional_value(const Expr& f, const Curve& y, double a, double b, double eps,
                         const QuadratureConfig& quad = {});

/// Residual r(x) = df/dy (x, y, box y) - box_eps[ t -> df/dv (t, y, box y) ](x)
/// over the given grid at one scale. The inner field df/dv is sampled on a
/// uniform auxiliary grid spanning [min(grid)-eps, max(grid)+eps] at spacing
/// <= eps/4 and interpolated linearly for the outer stencil, so y.domain must
/// cover [min(grid)-2eps, max(grid)+2eps].
ResidualField el_residual(const Expr& f, const Curve& y, std::span<const double> grid,
                          double eps);

/// Quadratic extrapolation to scale zero through the last three (scale,
/// sample) points; exact for samples affine or quadratic in the scale.
/// converged compares the last two extrapolants (with exactly three samples,
/// the quadratic against the linear one). A converged limit within zero_tol
/// is snapped to exactly zero; a non-converged family is never zero.
LimitEstimate extrapolate_limit(std::span<const double> scales, std::span<const Complex> samples,
                                double zero_tol, double conv_tol);

/// extrapolate_limit over sampler values along the schedule.
LimitEstimate bracket_limit(const std::function<Complex(double)>& sampler,
                            const EpsilonSchedule& schedule, double zero_tol = 1e-6,
                            double conv_tol = 1e-6);

/// Per-grid-point limit of the Euler–Lagrange residual along the schedule.
std::vector<LimitEstimate> bracket_field(const Expr& f, const Curve& y,
                                         std::span<const double> grid,
                                         const EpsilonSchedule& schedule, double zero_tol = 1e-6,
                                         double conv_tol = 1e-6);

/// Derivative of the action at y in direction h, split into its three parts:
///   functional_derivative = residual_term + boundary_term + i * remainder
/// where residual_term  = int r(x) h(x) dx,
///       boundary_term  = int box_eps(f_v h)(x) dx,
///       remainder      = -(eps/2) int [ box f_v box h - cobox f_v box h
///                                       - box f_v cobox h - cobox f_v cobox h ] dx,
/// and f_v(x) = df/dv evaluated along y. All terms are linear in h.
struct VariationDerivative {
    Complex functional_derivative{0.0, 0.0};
    Complex residual_term{0.0, 0.0};
    Complex boundary_term{0.0, 0.0};
    Complex remainder{0.0, 0.0};
};

/// Requires y.domain ⊇ [a-2eps, b+2eps] and h.domain ⊇ [a-eps, b+eps].
VariationDerivative variation_derivative(const Expr& f, const Curve& y, const Curve& h, double a,
                                         double b, double eps, const QuadratureConfig& quad = {});

enum class ExtremalVerdict { Extremal, NotExtremal, Inconclusive };

struct ExtremalReport {
    ExtremalVerdict verdict = ExtremalVerdict::Inconclusive;
    std::vector<LimitEstimate> limits;  // one per grid point
    ResidualField finest_residuals;     // residuals at the smallest scheduled scale
    double max_abs_limit = 0.0;         // over converged points
    int first_offender = -1;            // first non-converged / non-zero point, -1 if none
};

/// A curve is extremal when the residual limit is zero at every grid point;
/// any non-converged extrapolation makes the verdict Inconclusive rather
/// than guessing.
ExtremalReport is_extremal(const Expr& f, const Curve& y, std::span<const double> grid,
                           const EpsilonSchedule& schedule, double zero_tol = 1e-6,
                           double conv_tol = 1e-6);

}  // namespace scalevar
