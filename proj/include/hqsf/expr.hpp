#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hqsf/errors.hpp"

namespace hqsf {

using Complex = std::complex<double>;

// <f,g> = f1 g1 + f2 g2 for f = f1 + i f2, g = g1 + i g2.
// Equals Re(conj(f) * g).
inline double real_inner(Complex f, Complex g) noexcept {
    return f.real() * g.real() + f.imag() * g.imag();
}

// Value and first two complex derivatives of a holomorphic function at a point.
struct ComplexJet {
    Complex v{};
    Complex d1{};
    Complex d2{};
};

enum class NodeKind {
    Variable,   // z
    Literal,    // complex constant
    Sum,
    Difference,
    Product,
    Quotient,
    Power,      // non-negative integer exponent
    Negate,
    Exp,
    Log,
    Sin,
    Cos,
    Sinh,
    Cosh,
};

// Immutable tree for a holomorphic function of one complex variable z.
//
// Trees are built through the factory functions and operators below, which
// fold literal arithmetic at construction time; "3-(1/3)*i" therefore parses
// to a single Literal node. Nodes are shared and never mutated, so copies are
// cheap and concurrent evaluation of one tree is safe.
class Expr {
public:
    static Expr variable();
    static Expr literal(Complex value);
    static Expr literal(double value) { return literal(Complex(value, 0.0)); }

    NodeKind kind() const noexcept;
    Complex literal_value() const;     // Literal nodes only
    int exponent() const;              // Power nodes only
    std::size_t child_count() const noexcept;
    const Expr& child(std::size_t i) const;

    bool is_literal(Complex value) const;

    friend bool operator==(const Expr& a, const Expr& b);

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Expr make(NodeKind kind, std::vector<Expr> children,
                     Complex value = {}, int exponent = 0);
    std::shared_ptr<const Node> node_;

    friend Expr operator+(const Expr&, const Expr&);
    friend Expr operator-(const Expr&, const Expr&);
    friend Expr operator*(const Expr&, const Expr&);
    friend Expr operator/(const Expr&, const Expr&);
    friend Expr operator-(const Expr&);
    friend Expr pow(const Expr&, int);
    friend Expr exp(const Expr&);
    friend Expr log(const Expr&);
    friend Expr sin(const Expr&);
    friend Expr cos(const Expr&);
    friend Expr sinh(const Expr&);
    friend Expr cosh(const Expr&);
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, int exponent); // exponent >= 0
Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr sinh(const Expr& a);
Expr cosh(const Expr& a);

inline bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

// Grammar (whitespace free between tokens):
//   expression := term (('+'|'-') term)*
//   term       := factor (('*'|'/') factor)*
//   factor     := '-' factor | power
//   power      := atom ('^' exponent)?         -- '^' binds tighter than '-'
//   exponent   := uint ('^' exponent)?         -- right associative, folded
//   atom       := number | 'i' | 'z' | name '(' expression ')' | '(' expression ')'
//   name       := exp | log | sin | cos | sinh | cosh
// Numbers are non-negative decimals with optional exponent part; complex
// constants are written with the literal 'i', e.g. "3-(1/3)*i" (no implicit
// multiplication). Throws ParseError with the offending position.
Expr parse(std::string_view text);

// Canonical text form: explicit '*', parentheses only where the grammar
// requires them. parse(to_string(e)) == e for every tree built by this
// module.
std::string to_string(const Expr& e);

// Exact symbolic complex derivative d/dz.
Expr differentiate(const Expr& e);

// Throws EvalDomainError naming the offending subexpression on division by
// zero or log of zero.
Complex eval(const Expr& e, Complex z);

// (e(z), e'(z), e''(z)) through the symbolic derivatives of e.
ComplexJet eval_jet(const Expr& e, Complex z);

// Same jet through second-order forward-mode arithmetic on the tree; kept as
// an independent backend, the two agree to ~1e-14 relative.
ComplexJet eval_jet_forward(const Expr& e, Complex z);

// An expression bundled with its first two symbolic derivatives, so grid
// evaluation does not re-differentiate per point.
struct JetExpr {
    Expr f;
    Expr df;
    Expr ddf;

    explicit JetExpr(Expr expr)
        : f(std::move(expr)), df(differentiate(f)), ddf(differentiate(df)) {}

    ComplexJet jet(Complex z) const {
        return {eval(f, z), eval(df, z), eval(ddf, z)};
    }
    Complex operator()(Complex z) const { return eval(f, z); }
};

} // namespace hqsf
