#include "scalevar/scale_ops.hpp"

#include <cmath>
#include <sstream>

#include "scalevar/detail/stencil.hpp"
#include "scalevar/errors.hpp"

namespace scalevar {

namespace {

void require_eps(double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw ParameterError("scale eps must be a positive finite real");
}

void require_stencil(const Curve& f, double lo, double hi) {
    if (!(lo >= f.lo() && hi <= f.hi())) {
        std::ostringstream msg;
        msg << "stencil [" << lo << ", " << hi << "] leaves curve domain [" << f.lo() << ", "
            << f.hi() << "]";
        throw DomainError(msg.str());
    }
}

void require_shared_domain(const ComplexCurve& f) {
    if (f.re_part.lo() != f.im_part.lo() || f.re_part.hi() != f.im_part.hi())
        throw ParameterError("complex curve parts must share one domain");
}

Complex finite_or_throw(const Complex& z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw EvalError("scale operator produced a non-finite value");
    return z;
}

}  // namespace

double delta_plus(const Curve& f, double x, double eps) {
    require_eps(eps);
    require_stencil(f, x, x + eps);
    const double q = (f(x + eps) - f(x)) / eps;
    if (!std::isfinite(q)) throw EvalError("difference quotient is non-finite");
    return q;
}

double delta_minus(const Curve& f, double x, double eps) {
    require_eps(eps);
    require_stencil(f, x - eps, x);
    const double q = (f(x) - f(x - eps)) / eps;
    if (!std::isfinite(q)) throw EvalError("difference quotient is non-finite");
    return q;
}

Complex scale_derivative(const Curve& f, double x, double eps) {
    require_eps(eps);
    require_stencil(f, x - eps, x + eps);
    const Complex ahead(f(x + eps));
    const Complex here(f(x));
    const Complex behind(f(x - eps));
    return finite_or_throw(detail::combine_box(detail::plus_quotient(ahead, here, eps),
                                               detail::minus_quotient(here, behind, eps)));
}

Complex scale_derivative_complex(const ComplexCurve& f, double x, double eps) {
    require_eps(eps);
    require_shared_domain(f);
    require_stencil(f.re_part, x - eps, x + eps);
    const Complex ahead(f.re_part(x + eps), f.im_part(x + eps));
    const Complex here(f.re_part(x), f.im_part(x));
    const Complex behind(f.re_part(x - eps), f.im_part(x - eps));
    return finite_or_throw(detail::combine_box(detail::plus_quotient(ahead, here, eps),
                                               detail::minus_quotient(here, behind, eps)));
}

Complex conj_scale_derivative(const Curve& f, double x, double eps) {
    require_eps(eps);
    require_stencil(f, x - eps, x + eps);
    const Complex ahead(f(x + eps));
    const Complex here(f(x));
    const Complex behind(f(x - eps));
    return finite_or_throw(detail::combine_cobox(detail::plus_quotient(ahead, here, eps),
                                                 detail::minus_quotient(here, behind, eps)));
}

Complex conj_scale_derivative_complex(const ComplexCurve& f, double x, double eps) {
    require_eps(eps);
    require_shared_domain(f);
    require_stencil(f.re_part, x - eps, x + eps);
    const Complex ahead(f.re_part(x + eps), f.im_part(x + eps));
    const Complex here(f.re_part(x), f.im_part(x));
    const Complex behind(f.re_part(x - eps), f.im_part(x - eps));
    return finite_or_throw(detail::combine_cobox(detail::plus_quotient(ahead, here, eps),
                                                 detail::minus_quotient(here, behind, eps)));
}

Complex leibniz_defect(const Curve& f, const Curve& g, double x, double eps) {
    require_eps(eps);
    require_stencil(f, x - 2.0 * eps, x + 2.0 * eps);
    require_stencil(g, x - 2.0 * eps, x + 2.0 * eps);

    const double fp = f(x + eps), f0 = f(x), fm = f(x - eps);
    const double gp = g(x + eps), g0 = g(x), gm = g(x - eps);

    const Complex left = detail::combine_box(
        detail::plus_quotient(Complex(fp * gp), Complex(f0 * g0), eps),
        detail::minus_quotient(Complex(f0 * g0), Complex(fm * gm), eps));

    const Complex bf = detail::combine_box(detail::plus_quotient(Complex(fp), Complex(f0), eps),
                                           detail::minus_quotient(Complex(f0), Complex(fm), eps));
    const Complex bg = detail::combine_box(detail::plus_quotient(Complex(gp), Complex(g0), eps),
                                           detail::minus_quotient(Complex(g0), Complex(gm), eps));
    const Complex cf = detail::combine_cobox(detail::plus_quotient(Complex(fp), Complex(f0), eps),
                                             detail::minus_quotient(Complex(f0), Complex(fm), eps));
    const Complex cg = detail::combine_cobox(detail::plus_quotient(Complex(gp), Complex(g0), eps),
                                             detail::minus_quotient(Complex(g0), Complex(gm), eps));

    const Complex right = bf * Complex(g0) + Complex(f0) * bg +
                          Complex(0.0, 0.5 * eps) * (bf * bg - cf * bg - bf * cg - cf * cg);
    return finite_or_throw(left - right);
}

std::vector<Complex> scale_derivative_field(const Curve& f, std::span<const double> grid,
                                            double eps) {
    require_eps(eps);
    std::vector<Complex> out;
    out.reserve(grid.size());
    for (double x : grid) out.push_back(scale_derivative(f, x, eps));
    return out;
}

}  // namespace scalevar
