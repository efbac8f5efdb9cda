#include "hqsf/rotation.hpp"

#include <algorithm>
#include <cmath>

namespace hqsf {

const char* to_string(DiscriminantSign s) {
    switch (s) {
    case DiscriminantSign::Positive: return "PositiveDiscriminant";
    case DiscriminantSign::Negative: return "NegativeDiscriminant";
    case DiscriminantSign::Zero: return "ZeroDiscriminant";
    }
    return "?";
}

CaseTag discriminant(const RotationParams& p) {
    if (p.c == 0.0)
        throw Error("c = 0 gives the plain QSF class; the rotation solver needs c != 0");
    if (p.z1 == Complex(0.0, 0.0))
        throw Error("z1 = 0 is not admissible rotation data");
    double diff = p.c * p.c1 - p.c2;
    double omega = diff * diff + 4.0 * p.c * std::norm(p.z1);
    double scale = diff * diff + 4.0 * std::abs(p.c) * std::norm(p.z1);
    DiscriminantSign sign;
    if (std::abs(omega) <= 1e-12 * scale)
        sign = DiscriminantSign::Zero;
    else
        sign = omega > 0.0 ? DiscriminantSign::Positive : DiscriminantSign::Negative;
    return {sign, omega};
}

std::pair<Expr, Expr> solve_profile_functions(const RotationParams& p) {
    CaseTag tag = discriminant(p);
    Expr z = Expr::variable();
    // Mean of the two characteristic roots.
    Expr carrier = exp(Expr::literal((p.c * p.c1 + p.c2) / (2.0 * p.c)) * z);

    Expr f1 = [&] {
        switch (tag.sign) {
        case DiscriminantSign::Positive: {
            double split = std::sqrt(tag.omega) / (2.0 * p.c);
            return carrier * (Expr::literal(p.k1) * exp(Expr::literal(-split) * z) +
                              Expr::literal(p.k2) * exp(Expr::literal(split) * z));
        }
        case DiscriminantSign::Negative: {
            double freq = std::sqrt(-tag.omega) / (2.0 * p.c);
            return carrier * (Expr::literal(p.k1) * cos(Expr::literal(freq) * z) +
                              Expr::literal(p.k2) * sin(Expr::literal(freq) * z));
        }
        case DiscriminantSign::Zero:
        default:
            return carrier * (Expr::literal(p.k1) + Expr::literal(p.k2) * z);
        }
    }();

    // From i f1' = i c1 f1 - conj(z1) f2.
    Expr f2 = (Expr::literal(Complex(0.0, p.c1)) * f1 -
               Expr::literal(Complex(0.0, 1.0)) * differentiate(f1)) /
              Expr::literal(std::conj(p.z1));
    return {std::move(f1), std::move(f2)};
}

RotationSurface::RotationSurface(const RotationParams& p)
    : RotationSurface(p, solve_profile_functions(p)) {}

RotationSurface::RotationSurface(const RotationParams& p, std::pair<Expr, Expr> fs)
    : params_(p),
      tag_(discriminant(p)),
      f1_(std::move(fs.first)),
      f2_(std::move(fs.second)),
      g_(exp(Expr::variable())) {}

ScalarJet2 RotationSurface::field_jet(double u1, double u2) const {
    Complex z(u1, u2);
    return scalar_field_jet(f1_.jet(z), f2_.jet(z), g_.jet(z), params_.c);
}

ProfileSample RotationSurface::profile(double u1) const {
    ScalarJet2 h = field_jet(u1);
    return profile_from_field(u1, h.v, h.d1, h.d11);
}

Vec3 RotationSurface::immersion(double u1, double u2) const {
    ProfileSample s = profile(u1);
    return {s.A * std::cos(u2), s.A * std::sin(u2), s.B};
}

SurfaceGeometry RotationSurface::geometry(double u1, double u2) const {
    Complex z(u1, u2);
    return surface_geometry(g_.jet(z), field_jet(u1, u2));
}

HQSFData RotationSurface::hqsf_data() const {
    return HQSFData(f1_.f, f2_.f, g_.f, params_.c);
}

RadialH radial_h(const RotationParams& p, double u1) {
    RotationSurface surface(p);
    ScalarJet2 a = surface.field_jet(u1, 0.0);
    ScalarJet2 b = surface.field_jet(u1, 0.7331);
    if (std::abs(a.v - b.v) > 1e-9 * (1.0 + std::abs(a.v) + std::abs(b.v)))
        throw Error("constructive field is not radial; rotation data is inconsistent");
    return {a.v, a.d1};
}

ProfileSample profile(const RotationParams& p, double u1) {
    return RotationSurface(p).profile(u1);
}

Vec3 immersion_rotation(const RotationParams& p, double u1, double u2) {
    return RotationSurface(p).immersion(u1, u2);
}

// ---------------------------------------------------------------------------
// Profile machinery

namespace {

struct Dual {
    double v{}, d{};
};

Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
Dual operator/(Dual a, Dual b) {
    double v = a.v / b.v;
    return {v, (a.d - v * b.d) / b.v};
}
Dual dual_const(double c) { return {c, 0.0}; }
Dual dual_exp(Dual a) {
    double e = std::exp(a.v);
    return {e, e * a.d};
}

} // namespace

ProfileSample profile_from_field(double u1, double h, double dh, double d2h) {
    Dual u{u1, 1.0};
    Dual eu = dual_exp(u);
    Dual e2u = eu * eu;
    Dual one = dual_const(1.0);
    Dual H{h, dh};
    Dual Hp{dh, d2h};
    Dual A = ((one - e2u) * Hp + dual_const(2.0) * e2u * H) / (eu * (one + e2u));
    Dual B = dual_const(-2.0) * (Hp - H) / (one + e2u);
    return {u1, A.v, B.v, A.d, B.d};
}

// ---------------------------------------------------------------------------
// Closed forms

Expr closed_form_h_exponential(const RotationParams& p) {
    CaseTag tag = discriminant(p);
    if (tag.omega <= 0.0)
        throw Error("the exponential closed form requires a positive discriminant");
    double sq = std::sqrt(tag.omega);
    double diff = p.c * p.c1 - p.c2;
    double z14 = std::norm(p.z1) * std::norm(p.z1);
    Expr z = Expr::variable();
    Expr inner =
        Expr::literal(p.k1 * p.k1 * (tag.omega + diff * sq)) +
        Expr::literal(p.k2 * p.k2 * (tag.omega - diff * sq)) *
            exp(Expr::literal(2.0 * sq / p.c) * z);
    Expr num = exp(Expr::literal(2.0 * (p.c * p.c1 + p.c2 - sq) / p.c) * z) * pow(inner, 2);
    Expr den = (exp(Expr::literal(2.0) * z) + Expr::literal(1.0)) *
               Expr::literal(4.0 * p.c * p.c * z14);
    return num / den;
}

Expr closed_form_h_oscillatory(const RotationParams& p) {
    CaseTag tag = discriminant(p);
    if (tag.omega <= 0.0)
        throw Error("the oscillatory closed form is printed with sqrt(Omega) and "
                    "requires a positive discriminant");
    double sq = std::sqrt(tag.omega);
    double diff = p.c * p.c1 - p.c2;
    double b_sq = p.k1 * p.k1 - p.k2 * p.k2;
    double b_mix = 2.0 * p.k1 * p.k2;
    double z14 = std::norm(p.z1) * std::norm(p.z1);
    Expr z = Expr::variable();
    Expr phase = Expr::literal(sq / p.c) * z;
    Expr wave = Expr::literal(b_sq * diff + b_mix * sq) * sin(phase) +
                Expr::literal(b_sq * sq - b_mix * diff) * cos(phase);
    Expr num = Expr::literal(tag.omega) *
               exp(Expr::literal(2.0 * (p.c2 / p.c + p.c1)) * z) * pow(wave, 2);
    Expr den = (exp(Expr::literal(2.0) * z) + Expr::literal(1.0)) *
               Expr::literal(16.0 * p.c * p.c * z14);
    return num / den;
}

Expr closed_form_h_repeated(const RotationParams& p) {
    discriminant(p); // validates c != 0, z1 != 0
    double z14 = std::norm(p.z1) * std::norm(p.z1);
    Expr z = Expr::variable();
    Expr linear = (Expr::literal(p.k1) + Expr::literal(p.k2) * z) *
                      Expr::literal(p.c2 - p.c * p.c1) +
                  Expr::literal(p.k2 * p.c);
    Expr num = exp(Expr::literal(2.0 * (p.c2 / p.c + p.c1)) * z) *
               pow(Expr::literal(p.k2) * linear, 2);
    Expr den = (exp(Expr::literal(2.0) * z) + Expr::literal(1.0)) * Expr::literal(z14);
    return num / den;
}

ProfileSample closed_form_profile(const JetExpr& radial_field, double u1) {
    ComplexJet j = radial_field.jet(Complex(u1, 0.0));
    return profile_from_field(u1, j.v.real(), j.d1.real(), j.d2.real());
}

// ---------------------------------------------------------------------------
// Singularity scan

namespace {

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double flo) {
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        double mid = 0.5 * (lo + hi);
        double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

ScanResult scan_profile(const ProfileFn& f, double lo, double hi, int n) {
    if (n < 2)
        throw Error("scan needs at least 2 samples");
    if (!(lo < hi))
        throw Error("scan interval is empty");

    double step = (hi - lo) / (n - 1);
    std::vector<ProfileSample> samples(n);
    for (int k = 0; k < n; ++k)
        samples[k] = f(lo + k * step);

    ScanResult result;
    auto axis_distance = [&](double u) { return f(u).A; };
    auto speed_sq = [&](double u) {
        ProfileSample s = f(u);
        return s.dA * s.dA + s.dB * s.dB;
    };

    // Axis crossings: sign changes of A.
    for (int k = 0; k + 1 < n; ++k) {
        double a0 = samples[k].A, a1 = samples[k + 1].A;
        if (a0 == 0.0) {
            result.events.push_back(
                {SingularityKind::AxisCrossing, samples[k].u1, 0.0});
        } else if (a1 != 0.0 && (a0 < 0.0) != (a1 < 0.0)) {
            double root = bisect(axis_distance, samples[k].u1, samples[k + 1].u1, a0);
            result.events.push_back(
                {SingularityKind::AxisCrossing, root, std::abs(f(root).A)});
        }
    }
    if (samples[n - 1].A == 0.0)
        result.events.push_back({SingularityKind::AxisCrossing, samples[n - 1].u1, 0.0});

    // Profile critical points: local minima of dA^2 + dB^2 that refine to
    // (numerical) zeros. The derivative of the speed is estimated by central
    // differences of the analytic dA, dB.
    auto speed_slope = [&](double u) {
        double delta = 1e-6 * std::max(1.0, std::abs(u));
        return (speed_sq(u + delta) - speed_sq(u - delta)) / (2.0 * delta);
    };
    std::vector<double> slope(n);
    for (int k = 0; k < n; ++k)
        slope[k] = speed_slope(samples[k].u1);
    for (int k = 0; k + 1 < n; ++k) {
        if (!(slope[k] < 0.0 && slope[k + 1] > 0.0)) continue;
        double at = bisect(speed_slope, samples[k].u1, samples[k + 1].u1, slope[k]);
        double speed = std::sqrt(speed_sq(at));
        // Reference scale from the surrounding samples.
        double window = 0.0;
        for (int j = std::max(0, k - 5); j < std::min(n, k + 7); ++j)
            window = std::max(window,
                              std::sqrt(samples[j].dA * samples[j].dA +
                                        samples[j].dB * samples[j].dB));
        if (speed <= 1e-6 * window)
            result.events.push_back({SingularityKind::CriticalCircle, at, speed});
    }

    std::sort(result.events.begin(), result.events.end(),
              [](const SingularityEvent& a, const SingularityEvent& b) {
                  return a.u1 < b.u1;
              });

    for (const SingularityEvent& e : result.events) {
        if (e.u1 < lo + 2.0 * step || e.u1 > hi - 2.0 * step)
            result.warnings.push_back(
                "event at u1 = " + std::to_string(e.u1) +
                " lies within 2 grid steps of the interval end; widen the "
                "interval to rule out missed neighbours");
    }
    return result;
}

ScanResult singularity_scan(const RotationParams& p, double lo, double hi, int n) {
    RotationSurface surface(p);
    return scan_profile([&](double u1) { return surface.profile(u1); }, lo, hi, n);
}

} // namespace hqsf
