#pragma once

#include "hqsf/expr.hpp"

namespace hqsf {

// Second-order jet of a real scalar field on the (u1,u2) parameter plane:
// value, gradient and symmetric Hessian. The operators below are forward-mode
// truncated Taylor arithmetic in two variables, so fields assembled from
// squared moduli of holomorphic jets carry exact analytic derivatives.
struct ScalarJet2 {
    double v{};
    double d1{}, d2{};
    double d11{}, d12{}, d22{};

    // Gradient identified with the complex number h_{,1} + i h_{,2}.
    Complex grad() const noexcept { return {d1, d2}; }
    double grad_norm_sq() const noexcept { return d1 * d1 + d2 * d2; }
    double laplacian() const noexcept { return d11 + d22; }

    static ScalarJet2 constant(double c) noexcept { return {c, 0, 0, 0, 0, 0}; }
};

inline ScalarJet2 operator+(const ScalarJet2& a, const ScalarJet2& b) noexcept {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2,
            a.d11 + b.d11, a.d12 + b.d12, a.d22 + b.d22};
}

inline ScalarJet2 operator-(const ScalarJet2& a, const ScalarJet2& b) noexcept {
    return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2,
            a.d11 - b.d11, a.d12 - b.d12, a.d22 - b.d22};
}

inline ScalarJet2 operator*(double s, const ScalarJet2& a) noexcept {
    return {s * a.v, s * a.d1, s * a.d2, s * a.d11, s * a.d12, s * a.d22};
}

inline ScalarJet2 operator*(const ScalarJet2& a, const ScalarJet2& b) noexcept {
    return {a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + a.v * b.d2,
            a.d11 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d11,
            a.d12 * b.v + a.d1 * b.d2 + a.d2 * b.d1 + a.v * b.d12,
            a.d22 * b.v + 2.0 * a.d2 * b.d2 + a.v * b.d22};
}

inline ScalarJet2 operator/(const ScalarJet2& a, const ScalarJet2& b) noexcept {
    ScalarJet2 w;
    w.v = a.v / b.v;
    w.d1 = (a.d1 - w.v * b.d1) / b.v;
    w.d2 = (a.d2 - w.v * b.d2) / b.v;
    w.d11 = (a.d11 - 2.0 * w.d1 * b.d1 - w.v * b.d11) / b.v;
    w.d12 = (a.d12 - w.d1 * b.d2 - w.d2 * b.d1 - w.v * b.d12) / b.v;
    w.d22 = (a.d22 - 2.0 * w.d2 * b.d2 - w.v * b.d22) / b.v;
    return w;
}

// Jet of |F|^2 for a holomorphic F given by its jet (F, F', F''):
//   (|F|^2)_{,1}  = 2<F,F'>          (|F|^2)_{,2}  = 2<F,iF'>
//   (|F|^2)_{,11} = 2(|F'|^2+<F,F''>)  (|F|^2)_{,12} = 2<F,iF''>
//   (|F|^2)_{,22} = 2(|F'|^2-<F,F''>)
inline ScalarJet2 squared_modulus(const ComplexJet& f) noexcept {
    double dp = std::norm(f.d1);
    double inner2 = real_inner(f.v, f.d2);
    return {std::norm(f.v),
            2.0 * real_inner(f.v, f.d1),
            2.0 * real_inner(f.v, Complex(0.0, 1.0) * f.d1),
            2.0 * (dp + inner2),
            2.0 * real_inner(f.v, Complex(0.0, 1.0) * f.d2),
            2.0 * (dp - inner2)};
}

} // namespace hqsf
