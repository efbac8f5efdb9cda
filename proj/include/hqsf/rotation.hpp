#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hqsf/expr.hpp"
#include "hqsf/geometry.hpp"
#include "hqsf/weierstrass.hpp"

namespace hqsf {

// Data of a rotation surface: the holomorphic pair (f1, f2) is pinned down by
// the linear constraints i f1' = i c1 f1 - conj(z1) f2, i c f2' = z1 f1 + i c2 f2,
// leaving the constants below free. k1/k2 are the coefficients of the general
// solution: (a1,a2) in the distinct/repeated real-root cases, (b1,b2) in the
// oscillatory case.
struct RotationParams {
    double c{};       // != 0; c = 0 is the plain QSF class, rejected here
    double c1{}, c2{};
    Complex z1{};     // != 0
    double k1{}, k2{};
};

enum class DiscriminantSign { Positive, Negative, Zero };

// Omega = (c c1 - c2)^2 + 4 c |z1|^2, the discriminant of the characteristic
// equation of c f1'' - (c c1 + c2) f1' + (c1 c2 - |z1|^2) f1 = 0.
// Zero means |Omega| <= 1e-12 * ((c c1 - c2)^2 + 4|c||z1|^2).
struct CaseTag {
    DiscriminantSign sign{};
    double omega{};
};

const char* to_string(DiscriminantSign s);

struct ProfileSample {
    double u1{};
    double A{};   // distance from the rotation axis
    double B{};   // height along the axis
    double dA{}, dB{};

    bool regular() const noexcept { return dA * dA + dB * dB > 0.0; }
};

// Throws Error on c = 0 or z1 = 0.
CaseTag discriminant(const RotationParams& p);

// General solution f1 of the characteristic ODE for the case of p, and
// f2 = i (c1 f1 - f1') / conj(z1). Both returned symbolically.
std::pair<Expr, Expr> solve_profile_functions(const RotationParams& p);

// The constructive pipeline solved once: g = e^z and the scalar field
// h = (|f1|^2 + c|f2|^2)^2 / (1 + e^{2 u1}), which is radial (independent of
// u2) by construction.
class RotationSurface {
public:
    explicit RotationSurface(const RotationParams& p);

    const RotationParams& params() const noexcept { return params_; }
    const CaseTag& tag() const noexcept { return tag_; }
    const Expr& f1() const noexcept { return f1_.f; }
    const Expr& f2() const noexcept { return f2_.f; }

    ScalarJet2 field_jet(double u1, double u2 = 0.0) const;
    ComplexJet f1_jet(Complex z) const { return f1_.jet(z); }
    ComplexJet f2_jet(Complex z) const { return f2_.jet(z); }
    ProfileSample profile(double u1) const;
    Vec3 immersion(double u1, double u2) const;
    SurfaceGeometry geometry(double u1, double u2) const;

    // The same data packaged for the residual/identity machinery. Throws
    // DegenerateWronskian for coefficient pairs that make f1, f2 dependent.
    HQSFData hqsf_data() const;

private:
    RotationSurface(const RotationParams& p, std::pair<Expr, Expr> fs);

    RotationParams params_;
    CaseTag tag_;
    JetExpr f1_, f2_, g_;
};

struct RadialH {
    double h{};
    double dh{};
};

// Constructive radial field at u1 (checked against a second u2 to guard the
// radial invariant).
RadialH radial_h(const RotationParams& p, double u1);

ProfileSample profile(const RotationParams& p, double u1);

// X(u1,u2) = (A cos u2, A sin u2, B); equals the generic immersion with
// g = e^z at z = u1 + i u2.
Vec3 immersion_rotation(const RotationParams& p, double u1, double u2);

// Profile quantities from a radial jet (h, h', h''):
//   A = ((1-e^{2u1}) h' + 2 e^{2u1} h) / (e^{u1}(1+e^{2u1}))
//   B = -2 (h' - h) / (1+e^{2u1})
// with dA, dB by analytic differentiation.
ProfileSample profile_from_field(double u1, double h, double dh, double d2h);

// Printed closed forms of the radial field, one per root structure of the
// characteristic equation, returned as expressions in z (restricted to the
// real axis, z = u1). They evaluate whatever constants they are handed, which
// is how the ex6..ex12 fixtures use them; the exponential and oscillatory
// forms contain sqrt(Omega) and therefore require Omega > 0 as printed.
Expr closed_form_h_exponential(const RotationParams& p);
Expr closed_form_h_oscillatory(const RotationParams& p);
Expr closed_form_h_repeated(const RotationParams& p);

ProfileSample closed_form_profile(const JetExpr& radial_field, double u1);

enum class SingularityKind {
    AxisCrossing,    // A = 0 with regular profile: isolated singularity
    CriticalCircle,  // dA^2 + dB^2 = 0 off the axis: circle of singularities
};

struct SingularityEvent {
    SingularityKind kind{};
    double u1{};
    double residual{}; // |A| resp. sqrt(dA^2+dB^2) at the refined point
};

struct ScanResult {
    std::vector<SingularityEvent> events;
    std::vector<std::string> warnings; // events suspiciously close to the ends
};

using ProfileFn = std::function<ProfileSample(double)>;

// Samples n >= 2 points on [lo, hi], brackets sign changes of A and local
// minima of dA^2 + dB^2, refines them by bisection and keeps the minima that
// are genuine zeros.
ScanResult scan_profile(const ProfileFn& f, double lo, double hi, int n);
ScanResult singularity_scan(const RotationParams& p, double lo, double hi, int n);

} // namespace hqsf
