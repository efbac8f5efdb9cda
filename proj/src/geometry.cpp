#include "hqsf/geometry.hpp"

namespace hqsf {

Vec3 gauss_map(const ComplexJet& g) {
    double t = 1.0 + std::norm(g.v);
    return {2.0 * g.v.real() / t, 2.0 * g.v.imag() / t, (2.0 - t) / t};
}

namespace {

void require_regular_gauss_map(const ComplexJet& g) {
    if (std::abs(g.d1) == 0.0)
        throw SingularGaussMap("|g'| = 0: Gauss map is singular at this point");
}

} // namespace

IntermediateForms intermediate_forms(const ComplexJet& g, const ScalarJet2& h) {
    require_regular_gauss_map(g);
    IntermediateForms f;
    double gp2 = std::norm(g.d1);
    Complex grad = h.grad();
    Complex curvature_ratio = g.d2 / g.d1; // g''/g'
    f.T = 1.0 + std::norm(g.v);
    f.R = real_inner(grad, g.v / g.d1) - h.v;
    double twist = real_inner(curvature_ratio, grad);
    f.V11 = (h.d11 - twist) / gp2;
    f.V12 = (h.d12 - real_inner(Complex(0.0, 1.0) * curvature_ratio, grad)) / gp2;
    f.V22 = (h.d22 + twist) / gp2;
    f.A1 = 2.0 * f.R - f.T * f.V11;
    f.A2 = 2.0 * f.R - f.T * f.V22;
    f.P = f.A1 * f.A2 - f.T * f.T * f.V12 * f.V12;
    return f;
}

Vec3 immersion(const ComplexJet& g, const ScalarJet2& h) {
    require_regular_gauss_map(g);
    double t = 1.0 + std::norm(g.v);
    double r = real_inner(h.grad(), g.v / g.d1) - h.v;
    Complex planar = g.d1 * h.grad() / std::norm(g.d1) - (2.0 * r / t) * g.v;
    return {planar.real(), planar.imag(), -2.0 * r / t};
}

SurfaceGeometry surface_geometry(const ComplexJet& g, const ScalarJet2& h) {
    IntermediateForms f = intermediate_forms(g, h);
    if (is_degenerate(f))
        throw DegeneratePoint("regularity factor P vanishes at this point");

    SurfaceGeometry s;
    double gp2 = std::norm(g.d1);
    double t2 = f.T * f.T;
    s.X = immersion(g, h);
    s.N = gauss_map(g);
    s.a11 = gp2 / t2 * (f.A1 * f.A1 + t2 * f.V12 * f.V12);
    s.a12 = -gp2 / f.T * f.V12 * (f.A1 + f.A2);
    s.a22 = gp2 / t2 * (f.A2 * f.A2 + t2 * f.V12 * f.V12);
    s.b11 = 2.0 * gp2 / t2 * f.A1;
    s.b12 = -2.0 * gp2 / f.T * f.V12;
    s.b22 = 2.0 * gp2 / t2 * f.A2;
    s.L11 = 4.0 * gp2 / t2;
    s.L22 = s.L11;
    s.P = f.P;
    s.H = -(f.T * h.laplacian() / gp2 - 4.0 * f.R) / f.P;
    s.K = 4.0 / f.P;
    s.psi = 2.0 * h.v / f.T;
    s.lambda = h.grad_norm_sq() / gp2 - 4.0 * f.R * h.v / f.T;
    return s;
}

} // namespace hqsf
