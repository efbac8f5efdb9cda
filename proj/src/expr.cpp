#include "hqsf/expr.hpp"

#include <cassert>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

namespace hqsf {

struct Expr::Node {
    NodeKind kind;
    Complex value{};          // Literal
    int exponent{};           // Power
    std::vector<Expr> kids;
};

Expr Expr::make(NodeKind kind, std::vector<Expr> children, Complex value, int exponent) {
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->value = value;
    node->exponent = exponent;
    node->kids = std::move(children);
    return Expr(std::move(node));
}

Expr Expr::variable() { return make(NodeKind::Variable, {}); }
Expr Expr::literal(Complex value) { return make(NodeKind::Literal, {}, value); }

NodeKind Expr::kind() const noexcept { return node_->kind; }

Complex Expr::literal_value() const {
    assert(node_->kind == NodeKind::Literal);
    return node_->value;
}

int Expr::exponent() const {
    assert(node_->kind == NodeKind::Power);
    return node_->exponent;
}

std::size_t Expr::child_count() const noexcept { return node_->kids.size(); }

const Expr& Expr::child(std::size_t i) const {
    assert(i < node_->kids.size());
    return node_->kids[i];
}

bool Expr::is_literal(Complex value) const {
    return node_->kind == NodeKind::Literal && node_->value == value;
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->kind != b.node_->kind) return false;
    switch (a.node_->kind) {
    case NodeKind::Literal:
        return a.node_->value == b.node_->value;
    case NodeKind::Power:
        if (a.node_->exponent != b.node_->exponent) return false;
        break;
    default:
        break;
    }
    if (a.node_->kids.size() != b.node_->kids.size()) return false;
    for (std::size_t i = 0; i < a.node_->kids.size(); ++i)
        if (!(a.node_->kids[i] == b.node_->kids[i])) return false;
    return true;
}

namespace {

bool is_lit(const Expr& e) { return e.kind() == NodeKind::Literal; }

Complex pow_int(Complex base, int n) {
    Complex result(1.0, 0.0);
    Complex b = base;
    for (unsigned m = static_cast<unsigned>(n); m != 0; m >>= 1) {
        if (m & 1u) result *= b;
        b *= b;
    }
    return result;
}

} // namespace

Expr operator+(const Expr& a, const Expr& b) {
    if (is_lit(a) && is_lit(b)) return Expr::literal(a.literal_value() + b.literal_value());
    if (a.is_literal(Complex(0.0, 0.0))) return b;
    if (b.is_literal(Complex(0.0, 0.0))) return a;
    return Expr::make(NodeKind::Sum, {a, b});
}

Expr operator-(const Expr& a, const Expr& b) {
    if (is_lit(a) && is_lit(b)) return Expr::literal(a.literal_value() - b.literal_value());
    if (b.is_literal(Complex(0.0, 0.0))) return a;
    if (a.is_literal(Complex(0.0, 0.0))) return -b;
    return Expr::make(NodeKind::Difference, {a, b});
}

Expr operator*(const Expr& a, const Expr& b) {
    if (is_lit(a) && is_lit(b)) return Expr::literal(a.literal_value() * b.literal_value());
    if (a.is_literal(Complex(0.0, 0.0)) || b.is_literal(Complex(0.0, 0.0)))
        return Expr::literal(0.0);
    if (a.is_literal(Complex(1.0, 0.0))) return b;
    if (b.is_literal(Complex(1.0, 0.0))) return a;
    if (is_lit(b) && !is_lit(a)) return Expr::make(NodeKind::Product, {b, a});
    return Expr::make(NodeKind::Product, {a, b});
}

Expr operator/(const Expr& a, const Expr& b) {
    if (is_lit(a) && is_lit(b) && b.literal_value() != Complex(0.0, 0.0))
        return Expr::literal(a.literal_value() / b.literal_value());
    if (a.is_literal(Complex(0.0, 0.0))) return a;
    if (b.is_literal(Complex(1.0, 0.0))) return a;
    return Expr::make(NodeKind::Quotient, {a, b});
}

Expr operator-(const Expr& a) {
    if (is_lit(a)) return Expr::literal(-a.literal_value());
    if (a.kind() == NodeKind::Negate) return a.child(0);
    return Expr::make(NodeKind::Negate, {a});
}

Expr pow(const Expr& base, int exponent) {
    assert(exponent >= 0);
    if (exponent == 0) return Expr::literal(1.0);
    if (exponent == 1) return base;
    if (is_lit(base)) return Expr::literal(pow_int(base.literal_value(), exponent));
    return Expr::make(NodeKind::Power, {base}, {}, exponent);
}

Expr exp(const Expr& a) { return Expr::make(NodeKind::Exp, {a}); }
Expr log(const Expr& a) { return Expr::make(NodeKind::Log, {a}); }
Expr sin(const Expr& a) { return Expr::make(NodeKind::Sin, {a}); }
Expr cos(const Expr& a) { return Expr::make(NodeKind::Cos, {a}); }
Expr sinh(const Expr& a) { return Expr::make(NodeKind::Sinh, {a}); }
Expr cosh(const Expr& a) { return Expr::make(NodeKind::Cosh, {a}); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr run() {
        Expr e = expression();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected trailing input");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message, pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr expression() {
        Expr e = term();
        for (;;) {
            if (consume('+')) e = e + term();
            else if (consume('-')) e = e - term();
            else return e;
        }
    }

    Expr term() {
        Expr e = factor();
        for (;;) {
            if (consume('*')) e = e * factor();
            else if (consume('/')) e = e / factor();
            else return e;
        }
    }

    Expr factor() {
        if (consume('-')) return -factor();
        return power();
    }

    Expr power() {
        Expr base = atom();
        if (consume('^')) return pow(base, exponent());
        return base;
    }

    // Right-associative tower of unsigned integers, folded to one exponent.
    int exponent() {
        skip_ws();
        std::size_t at = pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            pos_ = at;
            fail("expected a non-negative integer exponent after '^'");
        }
        std::size_t end = pos_;
        while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end])))
            ++end;
        // "2.5" or "1e3" after '^' is a non-integer exponent, not a syntax error.
        if (end < text_.size() && (text_[end] == '.' ||
                                   text_[end] == 'e' || text_[end] == 'E'))
            fail("expected a non-negative integer exponent after '^'");
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + end, value);
        if (ec != std::errc() || value > std::numeric_limits<int>::max())
            fail("integer exponent out of range");
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        int n = static_cast<int>(value);
        if (consume('^')) {
            int m = exponent();
            std::int64_t r = 1;
            for (int k = 0; k < m; ++k) {
                r *= n;
                if (r > std::numeric_limits<int>::max())
                    fail("integer exponent out of range");
            }
            n = static_cast<int>(r);
        }
        return n;
    }

    Expr atom() {
        skip_ws();
        if (pos_ >= text_.size())
            fail("expected a number, 'z', 'i', a function call, or '('");
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number();
        if (std::isalpha(static_cast<unsigned char>(c)))
            return name();
        if (c == '(') {
            ++pos_;
            Expr e = expression();
            if (!consume(')'))
                fail("expected ')'");
            return e;
        }
        fail("expected a number, 'z', 'i', a function call, or '('");
    }

    Expr number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-'))
                ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark; // "2e" was the number 2 followed by something else
            }
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc() || ptr != text_.data() + pos_) {
            pos_ = start;
            fail("malformed number");
        }
        return Expr::literal(value);
    }

    Expr name() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        std::string_view word = text_.substr(start, pos_ - start);
        if (word == "z") return Expr::variable();
        if (word == "i") return Expr::literal(Complex(0.0, 1.0));
        Expr (*fn)(const Expr&) = nullptr;
        if (word == "exp") fn = static_cast<Expr (*)(const Expr&)>(exp);
        else if (word == "log") fn = log;
        else if (word == "sin") fn = static_cast<Expr (*)(const Expr&)>(sin);
        else if (word == "cos") fn = static_cast<Expr (*)(const Expr&)>(cos);
        else if (word == "sinh") fn = static_cast<Expr (*)(const Expr&)>(sinh);
        else if (word == "cosh") fn = static_cast<Expr (*)(const Expr&)>(cosh);
        else {
            pos_ = start;
            fail("unknown name '" + std::string(word) + "'");
        }
        if (!consume('('))
            fail("expected '(' after '" + std::string(word) + "'");
        Expr arg = expression();
        if (!consume(')'))
            fail("expected ')'");
        return fn(arg);
    }
};

} // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

// Binding strength used to decide parenthesization. Higher binds tighter.
int precedence(const Expr& e) {
    switch (e.kind()) {
    case NodeKind::Sum:
    case NodeKind::Difference:
        return 1;
    case NodeKind::Product:
    case NodeKind::Quotient:
        return 2;
    case NodeKind::Negate:
        return 3;
    case NodeKind::Power:
        return 4;
    default:
        return 5; // variable, function call, literal
    }
}

std::string real_to_string(double x) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string literal_to_string(Complex c) {
    double re = c.real(), im = c.imag();
    if (im == 0.0) return real_to_string(re);
    std::string imag_part =
        (im == 1.0) ? "i" : (im == -1.0) ? "-i" : real_to_string(im) + "*i";
    if (re == 0.0) return imag_part;
    if (im < 0.0 && imag_part[0] != '-') imag_part = "-" + imag_part;
    std::string joiner = (imag_part[0] == '-') ? "" : "+";
    return "(" + real_to_string(re) + joiner + imag_part + ")";
}

// How the printed form of a literal rebinds when re-parsed: "-2" behaves
// like a negation, "2*i" like a product, "(1+i)" and plain numbers are
// self-delimiting atoms.
int literal_print_prec(Complex c) {
    if (c.imag() == 0.0) return std::signbit(c.real()) ? 3 : 5;
    if (c.real() != 0.0) return 5; // printed with its own parentheses
    if (c.imag() == 1.0) return 5;
    if (c.imag() == -1.0) return 3;
    return 2;
}

void print(const Expr& e, std::string& out, int min_prec) {
    if (e.kind() == NodeKind::Literal) {
        std::string s = literal_to_string(e.literal_value());
        if (literal_print_prec(e.literal_value()) < min_prec)
            out += "(" + s + ")";
        else
            out += s;
        return;
    }
    int prec = precedence(e);
    bool parens = prec < min_prec;
    if (parens) out += "(";
    switch (e.kind()) {
    case NodeKind::Variable:
        out += "z";
        break;
    case NodeKind::Sum:
        print(e.child(0), out, 1);
        out += "+";
        print(e.child(1), out, 2);
        break;
    case NodeKind::Difference:
        print(e.child(0), out, 1);
        out += "-";
        print(e.child(1), out, 2);
        break;
    case NodeKind::Product:
        print(e.child(0), out, 2);
        out += "*";
        print(e.child(1), out, 3);
        break;
    case NodeKind::Quotient:
        print(e.child(0), out, 2);
        out += "/";
        print(e.child(1), out, 3);
        break;
    case NodeKind::Negate:
        out += "-";
        print(e.child(0), out, 4);
        break;
    case NodeKind::Power: {
        const Expr& base = e.child(0);
        bool base_atom = (base.kind() == NodeKind::Literal)
                             ? literal_print_prec(base.literal_value()) == 5
                             : precedence(base) == 5;
        if (!base_atom) out += "(";
        print(base, out, 0);
        if (!base_atom) out += ")";
        out += "^" + std::to_string(e.exponent());
        break;
    }
    case NodeKind::Exp: out += "exp("; print(e.child(0), out, 0); out += ")"; break;
    case NodeKind::Log: out += "log("; print(e.child(0), out, 0); out += ")"; break;
    case NodeKind::Sin: out += "sin("; print(e.child(0), out, 0); out += ")"; break;
    case NodeKind::Cos: out += "cos("; print(e.child(0), out, 0); out += ")"; break;
    case NodeKind::Sinh: out += "sinh("; print(e.child(0), out, 0); out += ")"; break;
    case NodeKind::Cosh: out += "cosh("; print(e.child(0), out, 0); out += ")"; break;
    default:
        assert(false);
    }
    if (parens) out += ")";
}

} // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print(e, out, 0);
    return out;
}

// ---------------------------------------------------------------------------
// Differentiation

Expr differentiate(const Expr& e) {
    switch (e.kind()) {
    case NodeKind::Variable:
        return Expr::literal(1.0);
    case NodeKind::Literal:
        return Expr::literal(0.0);
    case NodeKind::Sum:
        return differentiate(e.child(0)) + differentiate(e.child(1));
    case NodeKind::Difference:
        return differentiate(e.child(0)) - differentiate(e.child(1));
    case NodeKind::Product: {
        const Expr& a = e.child(0);
        const Expr& b = e.child(1);
        return differentiate(a) * b + a * differentiate(b);
    }
    case NodeKind::Quotient: {
        const Expr& a = e.child(0);
        const Expr& b = e.child(1);
        return (differentiate(a) * b - a * differentiate(b)) / pow(b, 2);
    }
    case NodeKind::Power: {
        const Expr& a = e.child(0);
        int n = e.exponent();
        return Expr::literal(static_cast<double>(n)) * pow(a, n - 1) * differentiate(a);
    }
    case NodeKind::Negate:
        return -differentiate(e.child(0));
    case NodeKind::Exp:
        return exp(e.child(0)) * differentiate(e.child(0));
    case NodeKind::Log:
        return differentiate(e.child(0)) / e.child(0);
    case NodeKind::Sin:
        return cos(e.child(0)) * differentiate(e.child(0));
    case NodeKind::Cos:
        return -(sin(e.child(0)) * differentiate(e.child(0)));
    case NodeKind::Sinh:
        return cosh(e.child(0)) * differentiate(e.child(0));
    case NodeKind::Cosh:
        return sinh(e.child(0)) * differentiate(e.child(0));
    }
    assert(false);
    return Expr::literal(0.0);
}

// ---------------------------------------------------------------------------
// Evaluation

Complex eval(const Expr& e, Complex z) {
    switch (e.kind()) {
    case NodeKind::Variable:
        return z;
    case NodeKind::Literal:
        return e.literal_value();
    case NodeKind::Sum:
        return eval(e.child(0), z) + eval(e.child(1), z);
    case NodeKind::Difference:
        return eval(e.child(0), z) - eval(e.child(1), z);
    case NodeKind::Product:
        return eval(e.child(0), z) * eval(e.child(1), z);
    case NodeKind::Quotient: {
        Complex den = eval(e.child(1), z);
        if (den == Complex(0.0, 0.0))
            throw EvalDomainError("division by zero in '" + to_string(e) + "'");
        return eval(e.child(0), z) / den;
    }
    case NodeKind::Power:
        return pow_int(eval(e.child(0), z), e.exponent());
    case NodeKind::Negate:
        return -eval(e.child(0), z);
    case NodeKind::Exp:
        return std::exp(eval(e.child(0), z));
    case NodeKind::Log: {
        Complex arg = eval(e.child(0), z);
        if (arg == Complex(0.0, 0.0))
            throw EvalDomainError("log of zero in '" + to_string(e) + "'");
        return std::log(arg); // principal branch
    }
    case NodeKind::Sin:
        return std::sin(eval(e.child(0), z));
    case NodeKind::Cos:
        return std::cos(eval(e.child(0), z));
    case NodeKind::Sinh:
        return std::sinh(eval(e.child(0), z));
    case NodeKind::Cosh:
        return std::cosh(eval(e.child(0), z));
    }
    assert(false);
    return {};
}

ComplexJet eval_jet(const Expr& e, Complex z) {
    Expr df = differentiate(e);
    return {eval(e, z), eval(df, z), eval(differentiate(df), z)};
}

// ---------------------------------------------------------------------------
// Forward-mode backend

namespace {

struct Jet2 {
    Complex v{}, d1{}, d2{};
};

Jet2 jadd(const Jet2& a, const Jet2& b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
Jet2 jsub(const Jet2& a, const Jet2& b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
Jet2 jneg(const Jet2& a) { return {-a.v, -a.d1, -a.d2}; }

Jet2 jmul(const Jet2& a, const Jet2& b) {
    return {a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}

Jet2 jdiv(const Jet2& a, const Jet2& b, const Expr& where) {
    if (b.v == Complex(0.0, 0.0))
        throw EvalDomainError("division by zero in '" + to_string(where) + "'");
    Complex v = a.v / b.v;
    Complex d1 = (a.d1 - v * b.d1) / b.v;
    Complex d2 = (a.d2 - 2.0 * d1 * b.d1 - v * b.d2) / b.v;
    return {v, d1, d2};
}

Jet2 jet_eval(const Expr& e, Complex z) {
    switch (e.kind()) {
    case NodeKind::Variable:
        return {z, Complex(1.0, 0.0), Complex(0.0, 0.0)};
    case NodeKind::Literal:
        return {e.literal_value(), {}, {}};
    case NodeKind::Sum:
        return jadd(jet_eval(e.child(0), z), jet_eval(e.child(1), z));
    case NodeKind::Difference:
        return jsub(jet_eval(e.child(0), z), jet_eval(e.child(1), z));
    case NodeKind::Product:
        return jmul(jet_eval(e.child(0), z), jet_eval(e.child(1), z));
    case NodeKind::Quotient:
        return jdiv(jet_eval(e.child(0), z), jet_eval(e.child(1), z), e);
    case NodeKind::Power: {
        Jet2 base = jet_eval(e.child(0), z);
        Jet2 result{Complex(1.0, 0.0), {}, {}};
        Jet2 b = base;
        for (unsigned m = static_cast<unsigned>(e.exponent()); m != 0; m >>= 1) {
            if (m & 1u) result = jmul(result, b);
            b = jmul(b, b);
        }
        return result;
    }
    case NodeKind::Negate:
        return jneg(jet_eval(e.child(0), z));
    case NodeKind::Exp: {
        Jet2 a = jet_eval(e.child(0), z);
        Complex v = std::exp(a.v);
        return {v, v * a.d1, v * (a.d1 * a.d1 + a.d2)};
    }
    case NodeKind::Log: {
        Jet2 a = jet_eval(e.child(0), z);
        if (a.v == Complex(0.0, 0.0))
            throw EvalDomainError("log of zero in '" + to_string(e) + "'");
        Complex d1 = a.d1 / a.v;
        return {std::log(a.v), d1, a.d2 / a.v - d1 * d1};
    }
    case NodeKind::Sin: {
        Jet2 a = jet_eval(e.child(0), z);
        Complex s = std::sin(a.v), c = std::cos(a.v);
        return {s, c * a.d1, -s * a.d1 * a.d1 + c * a.d2};
    }
    case NodeKind::Cos: {
        Jet2 a = jet_eval(e.child(0), z);
        Complex s = std::sin(a.v), c = std::cos(a.v);
        return {c, -s * a.d1, -c * a.d1 * a.d1 - s * a.d2};
    }
    case NodeKind::Sinh: {
        Jet2 a = jet_eval(e.child(0), z);
        Complex s = std::sinh(a.v), c = std::cosh(a.v);
        return {s, c * a.d1, s * a.d1 * a.d1 + c * a.d2};
    }
    case NodeKind::Cosh: {
        Jet2 a = jet_eval(e.child(0), z);
        Complex s = std::sinh(a.v), c = std::cosh(a.v);
        return {c, s * a.d1, c * a.d1 * a.d1 + s * a.d2};
    }
    }
    assert(false);
    return {};
}

} // namespace

ComplexJet eval_jet_forward(const Expr& e, Complex z) {
    Jet2 j = jet_eval(e, z);
    return {j.v, j.d1, j.d2};
}

} // namespace hqsf
