#include "scalevar/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>

#include "scalevar/detail/stencil.hpp"
#include "scalevar/errors.hpp"

namespace scalevar {

struct Expr::Node {
    Kind kind;
    double value = 0.0;            // Constant
    Var var = Var::X;              // Variable
    UnaryOp uop = UnaryOp::Neg;    // Unary
    BinaryOp bop = BinaryOp::Add;  // Binary
    int exponent = 0;              // Pow
    NodePtr a;                     // unary child / binary lhs / pow base
    NodePtr b;                     // binary rhs
};

namespace {

bool node_contains(const Expr::Node& n, Var v) {
    switch (n.kind) {
        case Expr::Kind::Constant: return false;
        case Expr::Kind::Variable: return n.var == v;
        case Expr::Kind::Unary:
        case Expr::Kind::Pow: return node_contains(*n.a, v);
        case Expr::Kind::Binary: return node_contains(*n.a, v) || node_contains(*n.b, v);
    }
    return false;
}

bool node_contains_sderiv(const Expr::Node& n) {
    switch (n.kind) {
        case Expr::Kind::Constant:
        case Expr::Kind::Variable: return false;
        case Expr::Kind::Unary:
            return n.uop == Expr::UnaryOp::ScaleDeriv || node_contains_sderiv(*n.a);
        case Expr::Kind::Pow: return node_contains_sderiv(*n.a);
        case Expr::Kind::Binary:
            return node_contains_sderiv(*n.a) || node_contains_sderiv(*n.b);
    }
    return false;
}

}  // namespace

Expr Expr::constant(double value) {
    if (!std::isfinite(value)) throw ParameterError("expression constants must be finite");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::variable(Var v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    n->var = v;
    return Expr(std::move(n));
}

Expr Expr::unary(UnaryOp op, const Expr& child) {
    if (op == UnaryOp::Neg && child.node_->kind == Kind::Constant) {
        return constant(-child.node_->value);
    }
    if (op == UnaryOp::Abs) {
        if (node_contains(*child.node_, Var::V) || node_contains_sderiv(*child.node_))
            throw ParameterError("abs(...) requires a subexpression free of v and of sderiv");
    }
    if (op == UnaryOp::ScaleDeriv) {
        if (node_contains(*child.node_, Var::Y) || node_contains(*child.node_, Var::V) ||
            node_contains_sderiv(*child.node_))
            throw ParameterError("sderiv(...) requires an unnested subexpression in x alone");
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::Unary;
    n->uop = op;
    n->a = child.node_;
    return Expr(std::move(n));
}

Expr Expr::binary(BinaryOp op, const Expr& lhs, const Expr& rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Binary;
    n->bop = op;
    n->a = lhs.node_;
    n->b = rhs.node_;
    return Expr(std::move(n));
}

Expr Expr::pow(const Expr& base, int exponent) {
    if (exponent < 0) throw ParameterError("power exponents must be non-negative integers");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Pow;
    n->exponent = exponent;
    n->a = base.node_;
    return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }

double Expr::constant_value() const {
    if (node_->kind != Kind::Constant) throw Error("constant_value() called on a non-constant node");
    return node_->value;
}

Var Expr::variable_name() const {
    if (node_->kind != Kind::Variable) throw Error("variable_name() called on a non-variable node");
    return node_->var;
}

Expr::UnaryOp Expr::unary_op() const {
    if (node_->kind != Kind::Unary) throw Error("unary_op() called on a non-unary node");
    return node_->uop;
}

Expr::BinaryOp Expr::binary_op() const {
    if (node_->kind != Kind::Binary) throw Error("binary_op() called on a non-binary node");
    return node_->bop;
}

int Expr::exponent() const {
    if (node_->kind != Kind::Pow) throw Error("exponent() called on a non-power node");
    return node_->exponent;
}

Expr Expr::left() const {
    if (!node_->a) throw Error("left() called on a leaf node");
    return Expr(node_->a);
}

Expr Expr::right() const {
    if (!node_->b) throw Error("right() called on a node without a right child");
    return Expr(node_->b);
}

bool contains(const Expr& e, Var v) {
    switch (e.kind()) {
        case Expr::Kind::Constant: return false;
        case Expr::Kind::Variable: return e.variable_name() == v;
        case Expr::Kind::Unary:
        case Expr::Kind::Pow: return contains(e.left(), v);
        case Expr::Kind::Binary: return contains(e.left(), v) || contains(e.right(), v);
    }
    return false;
}

bool contains_scale_deriv(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Constant:
        case Expr::Kind::Variable: return false;
        case Expr::Kind::Unary:
            return e.unary_op() == Expr::UnaryOp::ScaleDeriv || contains_scale_deriv(e.left());
        case Expr::Kind::Pow: return contains_scale_deriv(e.left());
        case Expr::Kind::Binary:
            return contains_scale_deriv(e.left()) || contains_scale_deriv(e.right());
    }
    return false;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr run() {
        skip_ws();
        if (at_end()) fail("empty expression", 0);
        Expr e = parse_sum();
        skip_ws();
        if (!at_end()) fail("unexpected trailing input", pos_);
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void skip_ws() {
        while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (!at_end() && peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) fail(std::string("expected ") + what, pos_);
    }

    Expr parse_sum() {
        Expr e = parse_term();
        for (;;) {
            if (accept('+')) e = Expr::binary(Expr::BinaryOp::Add, e, parse_term());
            else if (accept('-')) e = Expr::binary(Expr::BinaryOp::Sub, e, parse_term());
            else return e;
        }
    }

    Expr parse_term() {
        Expr e = parse_power();
        for (;;) {
            if (accept('*')) e = Expr::binary(Expr::BinaryOp::Mul, e, parse_power());
            else if (accept('/')) e = Expr::binary(Expr::BinaryOp::Div, e, parse_power());
            else return e;
        }
    }

    // Unary minus binds tighter than '^': "-x^2" reads ((-x) ^ 2).
    Expr parse_power() {
        Expr e = parse_unary();
        while (accept('^')) e = Expr::pow(e, parse_exponent());
        return e;
    }

    Expr parse_unary() {
        if (accept('-')) return Expr::unary(Expr::UnaryOp::Neg, parse_unary());
        return parse_primary();
    }

    int parse_exponent() {
        skip_ws();
        const std::size_t start = pos_;
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected a non-negative integer exponent", start);
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (!at_end() && (peek() == '.' || peek() == 'e' || peek() == 'E'))
            fail("expected a non-negative integer exponent", start);
        int value = 0;
        const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (res.ec != std::errc{}) fail("exponent out of range", start);
        return value;
    }

    Expr parse_primary() {
        skip_ws();
        if (at_end()) fail("unexpected end of input", pos_);
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Expr e = parse_sum();
            expect(')', "')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
        fail(std::string("unexpected character '") + c + "'", pos_);
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) ++pos_;
        if (!at_end() && (peek() == 'e' || peek() == 'E')) {
            std::size_t mark = pos_ + 1;
            if (mark < text_.size() && (text_[mark] == '+' || text_[mark] == '-')) ++mark;
            if (mark < text_.size() && std::isdigit(static_cast<unsigned char>(text_[mark]))) {
                pos_ = mark;
                while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            }
        }
        double value = 0.0;
        const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (res.ec != std::errc{} || res.ptr != text_.data() + pos_)
            fail("malformed numeric literal", start);
        return Expr::constant(value);
    }

    Expr parse_name() {
        const std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "x") return Expr::variable(Var::X);
        if (name == "y") return Expr::variable(Var::Y);
        if (name == "v") return Expr::variable(Var::V);

        Expr::UnaryOp op;
        if (name == "abs") op = Expr::UnaryOp::Abs;
        else if (name == "sin") op = Expr::UnaryOp::Sin;
        else if (name == "cos") op = Expr::UnaryOp::Cos;
        else if (name == "exp") op = Expr::UnaryOp::Exp;
        else if (name == "log") op = Expr::UnaryOp::Log;
        else if (name == "sderiv") op = Expr::UnaryOp::ScaleDeriv;
        else fail("unknown identifier '" + std::string(name) + "'", start);

        expect('(', "'(' after function name");
        Expr child = parse_sum();
        expect(')', "')'");

        if (op == Expr::UnaryOp::Abs) {
            if (contains(child, Var::V)) fail("abs(...) must not contain v", start);
            if (contains_scale_deriv(child)) fail("abs(...) must not contain sderiv", start);
        }
        if (op == Expr::UnaryOp::ScaleDeriv) {
            if (contains(child, Var::Y) || contains(child, Var::V))
                fail("sderiv(...) must depend on x only", start);
            if (contains_scale_deriv(child)) fail("sderiv(...) cannot be nested", start);
        }
        return Expr::unary(op, child);
    }
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

Complex eval_node(const Expr::Node& n, const EvalEnv& env);

Complex finite_or_throw(const Complex& z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw EvalError("expression evaluated to a non-finite value");
    return z;
}

Complex eval_unary(const Expr::Node& n, const EvalEnv& env) {
    if (n.uop == Expr::UnaryOp::ScaleDeriv) {
        if (!(env.eps > 0.0))
            throw EvalError("sderiv(...) requires a positive eps in the evaluation environment");
        EvalEnv probe = env;
        probe.x = env.x + env.eps;
        const Complex ahead = eval_node(*n.a, probe);
        probe.x = env.x - env.eps;
        const Complex behind = eval_node(*n.a, probe);
        probe.x = env.x;
        const Complex here = eval_node(*n.a, probe);
        return detail::combine_box(detail::plus_quotient(ahead, here, env.eps),
                                   detail::minus_quotient(here, behind, env.eps));
    }

    const Complex z = eval_node(*n.a, env);
    switch (n.uop) {
        case Expr::UnaryOp::Neg: return -z;
        case Expr::UnaryOp::Abs:
            return Complex(z.imag() == 0.0 ? std::abs(z.real()) : std::abs(z));
        case Expr::UnaryOp::Sin: return std::sin(z);
        case Expr::UnaryOp::Cos: return std::cos(z);
        case Expr::UnaryOp::Exp: return std::exp(z);
        case Expr::UnaryOp::Log:
            if (z == Complex(0.0, 0.0)) throw EvalError("log of zero");
            return std::log(z);
        case Expr::UnaryOp::ScaleDeriv: break;  // handled above
    }
    throw Error("unreachable unary operator");
}

Complex eval_node(const Expr::Node& n, const EvalEnv& env) {
    switch (n.kind) {
        case Expr::Kind::Constant: return Complex(n.value);
        case Expr::Kind::Variable:
            switch (n.var) {
                case Var::X: return Complex(env.x);
                case Var::Y: return Complex(env.y);
                case Var::V: return env.v;
            }
            break;
        case Expr::Kind::Unary: return finite_or_throw(eval_unary(n, env));
        case Expr::Kind::Binary: {
            const Complex a = eval_node(*n.a, env);
            const Complex b = eval_node(*n.b, env);
            switch (n.bop) {
                case Expr::BinaryOp::Add: return a + b;
                case Expr::BinaryOp::Sub: return a - b;
                case Expr::BinaryOp::Mul: return finite_or_throw(a * b);
                case Expr::BinaryOp::Div:
                    if (b == Complex(0.0, 0.0)) throw EvalError("division by zero");
                    return finite_or_throw(a / b);
            }
            break;
        }
        case Expr::Kind::Pow: {
            const Complex base = eval_node(*n.a, env);
            return finite_or_throw(detail::ipow(base, n.exponent));
        }
    }
    throw Error("unreachable expression node");
}

}  // namespace

Complex eval(const Expr& e, const EvalEnv& env) { return eval_node(*e.node_, env); }

// ---------------------------------------------------------------------------
// Derivative, simplification, printing
// ---------------------------------------------------------------------------

namespace {

bool is_const(const Expr& e, double v) {
    return e.kind() == Expr::Kind::Constant && e.constant_value() == v;
}

Expr mk_add(const Expr& a, const Expr& b) {
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    if (a.kind() == Expr::Kind::Constant && b.kind() == Expr::Kind::Constant)
        return Expr::constant(a.constant_value() + b.constant_value());
    return a + b;
}

Expr mk_sub(const Expr& a, const Expr& b) {
    if (is_const(b, 0.0)) return a;
    if (a.kind() == Expr::Kind::Constant && b.kind() == Expr::Kind::Constant)
        return Expr::constant(a.constant_value() - b.constant_value());
    if (structurally_equal(a, b)) return Expr::constant(0.0);
    if (is_const(a, 0.0)) return -b;
    return a - b;
}

Expr mk_mul(const Expr& a, const Expr& b) {
    if (is_const(a, 0.0) || is_const(b, 0.0)) return Expr::constant(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    if (a.kind() == Expr::Kind::Constant && b.kind() == Expr::Kind::Constant)
        return Expr::constant(a.constant_value() * b.constant_value());
    // c1 * (c2 * u)  ->  (c1 c2) * u
    if (a.kind() == Expr::Kind::Constant && b.kind() == Expr::Kind::Binary &&
        b.binary_op() == Expr::BinaryOp::Mul && b.left().kind() == Expr::Kind::Constant)
        return mk_mul(Expr::constant(a.constant_value() * b.left().constant_value()), b.right());
    return a * b;
}

Expr mk_div(const Expr& a, const Expr& b) {
    if (is_const(b, 1.0)) return a;
    if (is_const(a, 0.0) && !is_const(b, 0.0)) return Expr::constant(0.0);
    if (a.kind() == Expr::Kind::Constant && b.kind() == Expr::Kind::Constant &&
        b.constant_value() != 0.0)
        return Expr::constant(a.constant_value() / b.constant_value());
    return a / b;
}

Expr mk_pow(const Expr& base, int n) {
    if (n == 0) return Expr::constant(1.0);
    if (n == 1) return base;
    if (base.kind() == Expr::Kind::Constant)
        return Expr::constant(detail::ipow(base.constant_value(), n));
    return Expr::pow(base, n);
}

Expr diff_impl(const Expr& e, Var wrt) {
    switch (e.kind()) {
        case Expr::Kind::Constant: return Expr::constant(0.0);
        case Expr::Kind::Variable:
            return Expr::constant(e.variable_name() == wrt ? 1.0 : 0.0);
        case Expr::Kind::Unary: {
            const Expr u = e.left();
            switch (e.unary_op()) {
                case Expr::UnaryOp::Neg: return -diff_impl(u, wrt);
                case Expr::UnaryOp::Abs:
                    if (contains(u, wrt))
                        throw UnsupportedError("cannot differentiate through abs(...)");
                    return Expr::constant(0.0);
                case Expr::UnaryOp::ScaleDeriv:
                    if (wrt == Var::X)
                        throw UnsupportedError("cannot differentiate through sderiv(...)");
                    return Expr::constant(0.0);
                case Expr::UnaryOp::Sin:
                    return mk_mul(Expr::unary(Expr::UnaryOp::Cos, u), diff_impl(u, wrt));
                case Expr::UnaryOp::Cos:
                    return mk_mul(-Expr::unary(Expr::UnaryOp::Sin, u), diff_impl(u, wrt));
                case Expr::UnaryOp::Exp:
                    return mk_mul(Expr::unary(Expr::UnaryOp::Exp, u), diff_impl(u, wrt));
                case Expr::UnaryOp::Log: return mk_div(diff_impl(u, wrt), u);
            }
            break;
        }
        case Expr::Kind::Binary: {
            const Expr a = e.left();
            const Expr b = e.right();
            const auto op = e.binary_op();
            if (op == Expr::BinaryOp::Add) return mk_add(diff_impl(a, wrt), diff_impl(b, wrt));
            if (op == Expr::BinaryOp::Sub) return mk_sub(diff_impl(a, wrt), diff_impl(b, wrt));
            if (op == Expr::BinaryOp::Mul)
                return mk_add(mk_mul(diff_impl(a, wrt), b), mk_mul(a, diff_impl(b, wrt)));
            return mk_div(mk_sub(mk_mul(diff_impl(a, wrt), b), mk_mul(a, diff_impl(b, wrt))),
                          mk_pow(b, 2));
        }
        case Expr::Kind::Pow: {
            const Expr u = e.left();
            const int n = e.exponent();
            if (n == 0) return Expr::constant(0.0);
            return mk_mul(mk_mul(Expr::constant(static_cast<double>(n)), mk_pow(u, n - 1)),
                          diff_impl(u, wrt));
        }
    }
    throw Error("unreachable expression node in diff");
}

Expr simplify_impl(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Constant:
        case Expr::Kind::Variable: return e;
        case Expr::Kind::Unary: {
            const Expr u = simplify_impl(e.left());
            if (e.unary_op() == Expr::UnaryOp::Neg && u.kind() == Expr::Kind::Unary &&
                u.unary_op() == Expr::UnaryOp::Neg)
                return u.left();
            return Expr::unary(e.unary_op(), u);  // Neg of constant folds in the factory
        }
        case Expr::Kind::Binary: {
            const Expr a = simplify_impl(e.left());
            const Expr b = simplify_impl(e.right());
            switch (e.binary_op()) {
                case Expr::BinaryOp::Add: return mk_add(a, b);
                case Expr::BinaryOp::Sub: return mk_sub(a, b);
                case Expr::BinaryOp::Mul: return mk_mul(a, b);
                case Expr::BinaryOp::Div: return mk_div(a, b);
            }
            break;
        }
        case Expr::Kind::Pow: return mk_pow(simplify_impl(e.left()), e.exponent());
    }
    throw Error("unreachable expression node in simplify");
}

void print_node(const Expr& e, std::string& out) {
    switch (e.kind()) {
        case Expr::Kind::Constant: {
            char buf[64];
            const auto res = std::to_chars(buf, buf + sizeof(buf), e.constant_value());
            std::string text(buf, res.ptr);
            if (!text.empty() && text[0] == '-') out += "(" + text + ")";
            else out += text;
            return;
        }
        case Expr::Kind::Variable:
            out += (e.variable_name() == Var::X ? "x" : e.variable_name() == Var::Y ? "y" : "v");
            return;
        case Expr::Kind::Unary: {
            static constexpr const char* names[] = {"-", "abs", "sin", "cos", "exp", "log", "sderiv"};
            const auto op = e.unary_op();
            if (op == Expr::UnaryOp::Neg) {
                out += "(-";
                print_node(e.left(), out);
                out += ")";
            } else {
                out += names[static_cast<int>(op)];
                out += "(";
                print_node(e.left(), out);
                out += ")";
            }
            return;
        }
        case Expr::Kind::Binary: {
            static constexpr const char* ops[] = {" + ", " - ", " * ", " / "};
            out += "(";
            print_node(e.left(), out);
            out += ops[static_cast<int>(e.binary_op())];
            print_node(e.right(), out);
            out += ")";
            return;
        }
        case Expr::Kind::Pow: {
            out += "(";
            print_node(e.left(), out);
            out += " ^ " + std::to_string(e.exponent()) + ")";
            return;
        }
    }
}

}  // namespace

Expr diff(const Expr& e, Var wrt) { return diff_impl(e, wrt); }

Expr simplify(const Expr& e) { return simplify_impl(e); }

std::string to_string(const Expr& e) {
    std::string out;
    print_node(e, out);
    return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    const Expr::Node& na = *a.node_;
    const Expr::Node& nb = *b.node_;
    if (na.kind != nb.kind) return false;
    switch (na.kind) {
        case Expr::Kind::Constant: return na.value == nb.value;
        case Expr::Kind::Variable: return na.var == nb.var;
        case Expr::Kind::Unary:
            return na.uop == nb.uop && structurally_equal(Expr(na.a), Expr(nb.a));
        case Expr::Kind::Binary:
            return na.bop == nb.bop && structurally_equal(Expr(na.a), Expr(nb.a)) &&
                   structurally_equal(Expr(na.b), Expr(nb.b));
        case Expr::Kind::Pow:
            return na.exponent == nb.exponent && structurally_equal(Expr(na.a), Expr(nb.a));
    }
    return false;
}

}  // namespace scalevar
