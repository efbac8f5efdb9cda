#pragma once

#include <cmath>

#include "hqsf/expr.hpp"
#include "hqsf/scalar_jet.hpp"

namespace hqsf {

struct Vec3 {
    double x{}, y{}, z{};
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// Quantities shared by the immersion and the fundamental forms:
//   T = 1 + |g|^2
//   R = <grad h, g/g'> - h
//   V11 = (h_{,11} - <g''/g', grad h>)/|g'|^2    (V12, V22 analogous)
//   A_i = 2R - T V_ii
//   P   = A1 A2 - T^2 V12^2   (regularity factor)
struct IntermediateForms {
    double T{}, R{};
    double V11{}, V12{}, V22{};
    double A1{}, A2{};
    double P{};
};

// Per-point geometric package of the representation: position, unit normal,
// first/second fundamental forms, third-form diagonal, curvatures and the
// support quantities Psi = <X,N>, Lambda = <X,X>.
struct SurfaceGeometry {
    Vec3 X{}, N{};
    double a11{}, a12{}, a22{};
    double b11{}, b12{}, b22{};
    double L11{}, L22{};
    double H{}, K{};
    double P{};
    double psi{}, lambda{};
};

// Scale-aware regularity cutoff: a point counts as degenerate when
// |P| < kDegenerateEps * (1 + A1^2 + A2^2).
inline constexpr double kDegenerateEps = 1e-10;

inline bool is_degenerate(const IntermediateForms& f) {
    return std::abs(f.P) < kDegenerateEps * (1.0 + f.A1 * f.A1 + f.A2 * f.A2);
}

// N = (2 Re g, 2 Im g, 1-|g|^2) / (1+|g|^2).
Vec3 gauss_map(const ComplexJet& g);

// Throws SingularGaussMap when |g'| = 0.
IntermediateForms intermediate_forms(const ComplexJet& g, const ScalarJet2& h);

// X = (g' grad h / |g'|^2 - (2R/T) g, -2R/T); throws SingularGaussMap.
Vec3 immersion(const ComplexJet& g, const ScalarJet2& h);

// Full package; throws SingularGaussMap, and DegeneratePoint when the
// regularity factor P falls under the epsilon above.
SurfaceGeometry surface_geometry(const ComplexJet& g, const ScalarJet2& h);

} // namespace hqsf
