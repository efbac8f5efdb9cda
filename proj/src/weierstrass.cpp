#include "hqsf/weierstrass.hpp"

#include <algorithm>

#include <cmath>
#include <limits>

namespace hqsf {

ScalarJet2 scalar_field_jet(const ComplexJet& f1, const ComplexJet& f2,
                            const ComplexJet& g, double c) {
    ScalarJet2 a = squared_modulus(f1) + c * squared_modulus(f2);
    ScalarJet2 t = ScalarJet2::constant(1.0) + squared_modulus(g);
    return a * a / t;
}

HQSFData::HQSFData(Expr f1, Expr f2, Expr g, double c)
    : f1_(std::move(f1)),
      f2_(std::move(f2)),
      g_(std::move(g)),
      w_(f1_.f * f2_.df - f2_.f * f1_.df),
      c_(c) {
    // Probe W at a fixed spread of points; all-negligible means the input
    // pair is (numerically) linearly dependent.
    static const Complex probes[] = {
        {0.37, 0.62},  {-0.81, 0.24},  {1.13, -0.55}, {-0.42, -0.96},
        {0.07, 1.31},  {-1.27, -0.33}, {0.93, 0.88},  {0.21, -0.17},
        {-0.64, 1.02}, {1.45, 0.11},   {0.55, -1.24}, {-0.09, 0.43},
    };
    bool evaluated = false;
    for (Complex z : probes) {
        try {
            if (!wronskian_negligible(z)) return;
            evaluated = true;
        } catch (const EvalDomainError&) {
            // probe outside the expressions' domain; try the next one
        }
    }
    throw DegenerateWronskian(
        evaluated ? "f1 f2' - f2 f1' vanishes identically"
                  : "could not evaluate f1 f2' - f2 f1' at any probe point");
}

bool HQSFData::wronskian_negligible(Complex z) const {
    double w = std::abs(eval(w_.f, z));
    double scale = std::abs(eval(f1_.f, z)) * std::abs(eval(f2_.df, z)) +
                   std::abs(eval(f2_.f, z)) * std::abs(eval(f1_.df, z));
    return w < 1e-12 * scale;
}

ScalarJet2 build_scalar_field(const HQSFData& d, Complex z) {
    ComplexJet g = d.g().jet(z);
    if (std::abs(g.d1) == 0.0)
        throw SingularGaussMap("|g'| = 0: Gauss map is singular at this point");
    return scalar_field_jet(d.f1().jet(z), d.f2().jet(z), g, d.c());
}

double mu(const HQSFData& d, Complex z) {
    double w = std::abs(d.wronskian_at(z));
    if (w == 0.0)
        throw DegenerateWronskian("Wronskian vanishes at this point");
    double gp = std::abs(eval(d.g().df, z));
    if (gp == 0.0)
        throw SingularGaussMap("|g'| = 0: Gauss map is singular at this point");
    return std::log(2.0 * w / gp);
}

Vec3 immersion_closed(const HQSFData& d, Complex z) {
    ComplexJet f1 = d.f1().jet(z);
    ComplexJet f2 = d.f2().jet(z);
    ComplexJet g = d.g().jet(z);
    if (std::abs(g.d1) == 0.0)
        throw SingularGaussMap("|g'| = 0: Gauss map is singular at this point");

    double c = d.c();
    double a = std::norm(f1.v) + c * std::norm(f2.v);
    double t = 1.0 + std::norm(g.v);
    Complex s = f1.v * std::conj(f1.d1 / g.d1) + c * f2.v * std::conj(f2.d1 / g.d1);
    Complex combo = (std::conj(f1.v) * f1.d1 + c * std::conj(f2.v) * f2.d1) * (g.v / g.d1);
    double r = a / (t * t) *
               (4.0 * t * combo.real() - (3.0 * std::norm(g.v) + 1.0) * a);
    Complex planar = 2.0 * a / (t * t) * (2.0 * t * s - g.v * a) - (2.0 * r / t) * g.v;
    return {planar.real(), planar.imag(), -2.0 * r / t};
}

double defining_residual(const HQSFData& d, Complex z) {
    ComplexJet g = d.g().jet(z);
    if (std::abs(g.d1) == 0.0)
        throw SingularGaussMap("|g'| = 0: Gauss map is singular at this point");
    ScalarJet2 h = scalar_field_jet(d.f1().jet(z), d.f2().jet(z), g, d.c());
    SurfaceGeometry s = surface_geometry(g, h);

    // e^{2 mu} = (2|W|/|g'|)^2 without going through the logarithm, so the
    // residual stays defined as |W| -> 0.
    double e2mu = 4.0 * std::norm(d.wronskian_at(z)) / std::norm(g.d1);

    double term_h = 2.0 * s.psi * s.H;
    double term_mu = d.c() * s.psi * e2mu * s.K;
    double term_qd = (s.lambda - s.psi * s.psi) * s.K;
    return std::abs(term_h + term_mu + term_qd) /
           (std::abs(term_h) + std::abs(term_mu) + std::abs(term_qd) + 1e-30);
}

namespace {

double relative_residual(double lhs, double rhs) {
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-30);
}

} // namespace

IdentityReport identity_suite(const HQSFData& d, Complex z) {
    ComplexJet f1 = d.f1().jet(z);
    ComplexJet f2 = d.f2().jet(z);
    ComplexJet g = d.g().jet(z);
    if (std::abs(g.d1) == 0.0)
        throw SingularGaussMap("|g'| = 0: Gauss map is singular at this point");

    IdentityReport report;
    double gp2 = std::norm(g.d1);
    double w2 = std::norm(d.wronskian_at(z));

    ScalarJet2 t = ScalarJet2::constant(1.0) + squared_modulus(g);
    report.t_identity = relative_residual(t.v * t.laplacian() - t.grad_norm_sq(),
                                          4.0 * gp2);

    ScalarJet2 a = squared_modulus(f1) + d.c() * squared_modulus(f2);
    double a_bilinear = a.v * a.laplacian() - a.grad_norm_sq();
    report.a_identity = relative_residual(a_bilinear, 4.0 * d.c() * w2);

    double e2mu = (w2 > 0.0) ? std::exp(2.0 * mu(d, z)) : 0.0;
    report.mu_consistency = relative_residual(a_bilinear / gp2, d.c() * e2mu);

    // Flat five-point Laplacian of mu with one Richardson step. mu blows up
    // at zeros of W and of g', so the step adapts to a jet-based estimate of
    // the distance to the nearest such zero: small enough to keep the
    // truncation error down near a zero, large enough that dividing the
    // round-off of mu by step^2 stays harmless far away from them.
    try {
        ComplexJet w = d.wronskian_jet(z);
        double reach = 1.0;
        if (std::abs(w.d1) > 0.0)
            reach = std::min(reach, std::abs(w.v) / std::abs(w.d1));
        if (std::abs(w.d2) > 0.0)
            reach = std::min(reach, std::sqrt(2.0 * std::abs(w.v) / std::abs(w.d2)));
        if (std::abs(g.d2) > 0.0)
            reach = std::min(reach, std::abs(g.d1) / std::abs(g.d2));
        double step = std::clamp(reach / 64.0, 1e-4, 1e-2);
        auto lap = [&](double hh) {
            return (mu(d, z + Complex(hh, 0)) + mu(d, z - Complex(hh, 0)) +
                    mu(d, z + Complex(0, hh)) + mu(d, z - Complex(0, hh)) -
                    4.0 * mu(d, z)) /
                   (hh * hh);
        };
        report.mu_laplacian_fd = std::abs((4.0 * lap(step / 2) - lap(step)) / 3.0);
    } catch (const Error&) {
        report.mu_laplacian_fd = std::numeric_limits<double>::quiet_NaN();
    }
    return report;
}

} // namespace hqsf
