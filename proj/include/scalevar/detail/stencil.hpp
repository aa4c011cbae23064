#pragma once

#include <complex>

namespace scalevar::detail {

using Complex = std::complex<double>;

// Forward/backward difference quotients at scale eps. Every scale-derivative
// evaluation in the library funnels through these helpers so that closed-form
// expressions, sampled curves, and sderiv(...) subexpressions round
// identically.
inline Complex plus_quotient(const Complex& ahead, const Complex& here, double eps) {
    return (ahead - here) / eps;
}

inline Complex minus_quotient(const Complex& here, const Complex& behind, double eps) {
    return (here - behind) / eps;
}

// box  = (d+ + d-)/2 - i (d+ - d-)/2
// cobox = (d+ + d-)/2 + i (d+ - d-)/2
inline Complex combine_box(const Complex& dplus, const Complex& dminus) {
    const Complex s = 0.5 * (dplus + dminus);
    const Complex d = 0.5 * (dplus - dminus);
    return Complex(s.real() + d.imag(), s.imag() - d.real());
}

inline Complex combine_cobox(const Complex& dplus, const Complex& dminus) {
    const Complex s = 0.5 * (dplus + dminus);
    const Complex d = 0.5 * (dplus - dminus);
    return Complex(s.real() - d.imag(), s.imag() + d.real());
}

// Integer power by binary exponentiation; used by both constant folding and
// evaluation so the two agree bit for bit.
template <class T>
T ipow(T base, int n) {
    T acc(1.0);
    while (n > 0) {
        if (n & 1) acc = acc * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return acc;
}

}  // namespace scalevar::detail
