#pragma once

#include "hqsf/expr.hpp"
#include "hqsf/geometry.hpp"
#include "hqsf/scalar_jet.hpp"

namespace hqsf {

// Jet of the scalar field h = A^2/T with A = |f1|^2 + c |f2|^2, T = 1 + |g|^2.
ScalarJet2 scalar_field_jet(const ComplexJet& f1, const ComplexJet& f2,
                            const ComplexJet& g, double c);

// Holomorphic data (g, f1, f2, c) of an HQSF surface. Construction
// differentiates everything once and rejects pairs whose Wronskian
// W = f1 f2' - f2 f1' is numerically the zero function.
class HQSFData {
public:
    HQSFData(Expr f1, Expr f2, Expr g, double c);

    double c() const noexcept { return c_; }
    const JetExpr& f1() const noexcept { return f1_; }
    const JetExpr& f2() const noexcept { return f2_; }
    const JetExpr& g() const noexcept { return g_; }
    // W and its derivative, for jet evaluation of the Wronskian.
    const Expr& wronskian() const noexcept { return w_.f; }
    Complex wronskian_at(Complex z) const { return eval(w_.f, z); }
    ComplexJet wronskian_jet(Complex z) const { return w_.jet(z); }

    // |W(z)| < 1e-12 (|f1||f2'| + |f2||f1'|): below the scale at which the
    // Wronskian is distinguishable from zero in double precision.
    bool wronskian_negligible(Complex z) const;

private:
    JetExpr f1_, f2_, g_, w_;
    double c_;
};

ScalarJet2 build_scalar_field(const HQSFData& d, Complex z);

// mu = ln(2|W|/|g'|); throws DegenerateWronskian / SingularGaussMap.
double mu(const HQSFData& d, Complex z);

// Closed-form immersion straight from (g, f1, f2, c), no scalar-field jet.
// Agrees with immersion(g_jet, build_scalar_field(...)) wherever |g'| > 0.
Vec3 immersion_closed(const HQSFData& d, Complex z);

// Relative residual of the defining relation
//   2 Psi H + (c Psi e^{2 mu} + Lambda - Psi^2) K = 0,
// normalized by the sum of the three term magnitudes. <= 1e-8 for valid data
// at regular points.
double defining_residual(const HQSFData& d, Complex z);

// Residuals of the differential identities behind the representation, each
// normalized by |lhs| + |rhs| + eps:
//   t_identity:      T lap(T) - |grad T|^2 = 4|g'|^2
//   a_identity:      A lap(A) - |grad A|^2 = 4c|W|^2
//   mu_consistency:  (A lap(A) - |grad A|^2)/|g'|^2 = c e^{2 mu}
// plus the flat finite-difference Laplacian of mu (mu is the log-modulus of a
// holomorphic quotient, hence harmonic; the third fundamental form is
// conformal to the flat parameter metric, so this is the right Laplacian).
// mu_laplacian_fd is NaN when the Wronskian vanishes inside the stencil.
struct IdentityReport {
    double t_identity{};
    double a_identity{};
    double mu_consistency{};
    double mu_laplacian_fd{};
};

IdentityReport identity_suite(const HQSFData& d, Complex z);

} // namespace hqsf
