#pragma once

#include <span>
#include <vector>

#include "scalevar/curve.hpp"

namespace scalevar {

/// Forward difference quotient (f(x+eps) - f(x)) / eps.
/// Requires eps > 0 (ParameterError) and [x, x+eps] inside the curve domain
/// (DomainError).
double delta_plus(const Curve& f, double x, double eps);

/// Backward difference quotient (f(x) - f(x-eps)) / eps, the mirror of
/// delta_plus with stencil [x-eps, x].
double delta_minus(const Curve& f, double x, double eps);

/// Scale derivative at scale eps,
///   (d+ + d-)/2 - i (d+ - d-)/2,
/// with the quotients above. Stencil [x-eps, x+eps] must lie in the domain.
Complex scale_derivative(const Curve& f, double x, double eps);

/// Scale derivative of a complex curve: box(Re f) + i box(Im f), computed on
/// complex difference quotients (the two agree bit for bit).
Complex scale_derivative_complex(const ComplexCurve& f, double x, double eps);

/// Complex conjugate of scale_derivative, i.e. (d+ + d-)/2 + i (d+ - d-)/2.
Complex conj_scale_derivative(const Curve& f, double x, double eps);

/// Componentwise extension of conj_scale_derivative to complex curves:
/// cobox(Re f) + i cobox(Im f). Note this is NOT the complex conjugate of
/// scale_derivative_complex once Im f is nonzero.
Complex conj_scale_derivative_complex(const ComplexCurve& f, double x, double eps);

/// Defect of the product rule at scale eps:
///   box(f g) - [ box(f) g + f box(g)
///                + i eps/2 (box f box g - cobox f box g
///                           - box f cobox g - cobox f cobox g) ].
/// The identity holds exactly in real arithmetic, so the result measures
/// floating-point rounding only. Requires [x-2eps, x+2eps] inside both
/// domains.
Complex leibniz_defect(const Curve& f, const Curve& g, double x, double eps);

/// Pointwise scale_derivative over a grid.
std::vector<Complex> scale_derivative_field(const Curve& f, std::span<const double> grid,
                                            double eps);

}  // namespace scalevar
