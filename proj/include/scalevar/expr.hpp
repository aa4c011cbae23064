#pragma once

#include <complex>
#include <memory>
#include <string>
#include <string_view>

namespace scalevar {

using Complex = std::complex<double>;

/// The three expression variables: the abscissa, the curve value, and the
/// scale-derivative slot.
enum class Var { X, Y, V };

/// Evaluation context for a Lagrangian-style expression. `eps` is consumed
/// only by sderiv(...) subexpressions.
struct EvalEnv {
    double x = 0.0;
    double y = 0.0;
    Complex v{0.0, 0.0};
    double eps = 0.0;
};

/// Immutable expression tree over variables x, y, v.
///
/// Nodes: real constants, variables, unary neg/abs/sin/cos/exp/log, the
/// sderiv(...) operator (scale derivative of an x-only subexpression at the
/// ambient eps), binary add/sub/mul/div, and integer powers.
///
/// Structural invariants, enforced by the factories:
///   - abs(...) takes a subtree free of v and of sderiv (guaranteed real),
///   - sderiv(...) takes a subtree in x alone,
///   - pow exponents are non-negative integers.
class Expr {
public:
    enum class Kind { Constant, Variable, Unary, Binary, Pow };
    enum class UnaryOp { Neg, Abs, Sin, Cos, Exp, Log, ScaleDeriv };
    enum class BinaryOp { Add, Sub, Mul, Div };

    static Expr constant(double value);
    static Expr variable(Var v);
    static Expr unary(UnaryOp op, const Expr& child);
    static Expr binary(BinaryOp op, const Expr& lhs, const Expr& rhs);
    static Expr pow(const Expr& base, int exponent);

    Kind kind() const;
    double constant_value() const;
    Var variable_name() const;
    UnaryOp unary_op() const;
    BinaryOp binary_op() const;
    int exponent() const;
    Expr left() const;   // unary child, pow base, or binary lhs
    Expr right() const;  // binary rhs

    struct Node;  // implementation detail, defined in expr.cpp

private:
    using NodePtr = std::shared_ptr<const Node>;

    explicit Expr(NodePtr node) : node_(std::move(node)) {}
    NodePtr node_;

    friend bool structurally_equal(const Expr& a, const Expr& b);
    friend Complex eval(const Expr& e, const EvalEnv& env);
};

inline Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(Expr::BinaryOp::Add, a, b); }
inline Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(Expr::BinaryOp::Sub, a, b); }
inline Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(Expr::BinaryOp::Mul, a, b); }
inline Expr operator/(const Expr& a, const Expr& b) { return Expr::binary(Expr::BinaryOp::Div, a, b); }
inline Expr operator-(const Expr& a) { return Expr::unary(Expr::UnaryOp::Neg, a); }

/// Parse expression text. Grammar (see docs/grammar.md): binary + - * /,
/// integer powers with ^, unary minus binding tighter than ^, parentheses,
/// calls abs/sin/cos/exp/log/sderiv, variables x y v, decimal literals.
/// Throws ParseError with a 0-based character offset.
Expr parse(std::string_view text);

/// Evaluate with complex arithmetic. Real subexpressions embed with zero
/// imaginary part. Throws EvalError on division by zero, log of zero, or a
/// non-finite result; sderiv requires env.eps > 0.
Complex eval(const Expr& e, const EvalEnv& env);

/// Symbolic derivative. v is treated as a single complex-analytic variable.
/// Differentiating through abs or sderiv with respect to a variable occurring
/// inside them throws UnsupportedError.
Expr diff(const Expr& e, Var wrt);

/// Constant folding and 0/1 identities; evaluation-equivalent on every env
/// where the input evaluates.
Expr simplify(const Expr& e);

/// Fully parenthesized rendering; parse(to_string(e)) is structurally equal
/// to e.
std::string to_string(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);

/// True if variable v occurs anywhere in e.
bool contains(const Expr& e, Var v);

/// True if any sderiv(...) node occurs in e.
bool contains_scale_deriv(const Expr& e);

}  // namespace scalevar
