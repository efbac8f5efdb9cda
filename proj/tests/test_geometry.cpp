#include <doctest.h>

#include <functional>

#include "hqsf/geometry.hpp"
#include "support/oracles.hpp"

using hqsf::Complex;
using hqsf::ComplexJet;
using hqsf::Expr;
using hqsf::ScalarJet2;
using hqsf::Vec3;

namespace {

// Unit-sphere data: g = z, h = (1+|z|^2)/2.
ComplexJet sphere_g(Complex z) { return {z, {1, 0}, {0, 0}}; }
ScalarJet2 sphere_h(Complex z) {
    return {0.5 * (1.0 + std::norm(z)), z.real(), z.imag(), 1.0, 0.0, 1.0};
}

// A (g, h) pair bundled for finite-difference probing.
struct SurfaceData {
    hqsf::JetExpr g;
    std::function<ScalarJet2(Complex)> h;
};

std::vector<SurfaceData> property_data() {
    const Expr z = Expr::variable();
    std::vector<SurfaceData> data;
    data.push_back({hqsf::JetExpr(z), sphere_h});
    // Squared-modulus fields give genuine scalar fields with exact jets.
    hqsf::JetExpr f1((z - Expr::literal(1.0)) * exp(Expr::literal(0.5) * z));
    data.push_back({hqsf::JetExpr(pow(z, 2)),
                    [f1](Complex at) { return hqsf::squared_modulus(f1.jet(at)); }});
    hqsf::JetExpr f2(sin(z) + Expr::literal(2.0));
    data.push_back({hqsf::JetExpr(exp(z)),
                    [f2](Complex at) {
                        return ScalarJet2::constant(0.2) +
                               hqsf::squared_modulus(f2.jet(at));
                    }});
    return data;
}

} // namespace

TEST_CASE("gauss_map: poles and equator of g = z") {
    Vec3 n0 = hqsf::gauss_map(sphere_g({0, 0}));
    CHECK(n0.x == 0.0);
    CHECK(n0.y == 0.0);
    CHECK(n0.z == 1.0);

    Vec3 n1 = hqsf::gauss_map(sphere_g({1, 0}));
    CHECK(oracle::rel(n1.x, 1.0) < 1e-15);
    CHECK(std::abs(n1.y) < 1e-15);
    CHECK(std::abs(n1.z) < 1e-15);

    Vec3 ni = hqsf::gauss_map(sphere_g({0, 1}));
    CHECK(std::abs(ni.x) < 1e-15);
    CHECK(oracle::rel(ni.y, 1.0) < 1e-15);
    CHECK(std::abs(ni.z) < 1e-15);

    oracle::Rng rng(3);
    for (int k = 0; k < 50; ++k) {
        Complex g = rng.complex_in_disk(4.0);
        CHECK(std::abs(norm(hqsf::gauss_map({g, {1, 0}, {}})) - 1.0) < 1e-12);
    }
}

TEST_CASE("intermediate_forms: unit-sphere values") {
    auto f0 = hqsf::intermediate_forms(sphere_g({0, 0}), sphere_h({0, 0}));
    CHECK(f0.T == 1.0);
    CHECK(f0.R == -0.5);
    CHECK(f0.V11 == 1.0);
    CHECK(f0.V22 == 1.0);
    CHECK(f0.V12 == 0.0);
    CHECK(f0.A1 == -2.0);
    CHECK(f0.A2 == -2.0);
    CHECK(f0.P == 4.0);
    CHECK_FALSE(hqsf::is_degenerate(f0));

    auto f1 = hqsf::intermediate_forms(sphere_g({1, 0}), sphere_h({1, 0}));
    CHECK(f1.T == 2.0);
    CHECK(std::abs(f1.R) < 1e-15);
    CHECK(oracle::rel(f1.A1, -2.0) < 1e-15);
    CHECK(oracle::rel(f1.A2, -2.0) < 1e-15);
    CHECK(oracle::rel(f1.P, 4.0) < 1e-15);
}

TEST_CASE("intermediate_forms: h = Re z is degenerate everywhere") {
    oracle::Rng rng(5);
    for (int k = 0; k < 20; ++k) {
        Complex z = rng.complex_in_disk(2.0);
        ScalarJet2 h{z.real(), 1.0, 0.0, 0.0, 0.0, 0.0};
        auto f = hqsf::intermediate_forms(sphere_g(z), h);
        CHECK(std::abs(f.R) < 1e-15);
        CHECK(f.V11 == 0.0);
        CHECK(f.V12 == 0.0);
        CHECK(f.V22 == 0.0);
        CHECK(f.P == 0.0);
        CHECK(hqsf::is_degenerate(f));
        CHECK_THROWS_AS(hqsf::surface_geometry(sphere_g(z), h), hqsf::DegeneratePoint);
    }
}

TEST_CASE("immersion: sphere data reproduces the Gauss map") {
    Vec3 x0 = hqsf::immersion(sphere_g({0, 0}), sphere_h({0, 0}));
    CHECK(x0.x == 0.0);
    CHECK(x0.y == 0.0);
    CHECK(x0.z == 1.0);

    Vec3 x1 = hqsf::immersion(sphere_g({1, 0}), sphere_h({1, 0}));
    CHECK(oracle::rel(x1.x, 1.0) < 1e-15);
    CHECK(std::abs(x1.y) < 1e-15);
    CHECK(std::abs(x1.z) < 1e-15);

    oracle::Rng rng(7);
    for (int k = 0; k < 50; ++k) {
        Complex z = rng.complex_in_disk(2.0);
        Vec3 x = hqsf::immersion(sphere_g(z), sphere_h(z));
        Vec3 n = hqsf::gauss_map(sphere_g(z));
        CHECK(std::abs(norm(x - n)) < 1e-12);
    }
}

TEST_CASE("immersion: singular Gauss map is rejected") {
    ComplexJet g{{0.3, 0.1}, {0, 0}, {2, 0}};
    CHECK_THROWS_AS(hqsf::immersion(g, sphere_h({0.3, 0.1})), hqsf::SingularGaussMap);
    CHECK_THROWS_AS(hqsf::intermediate_forms(g, sphere_h({0.3, 0.1})),
                    hqsf::SingularGaussMap);
}

TEST_CASE("surface_geometry: the unit sphere end to end") {
    oracle::Rng rng(9);
    for (int k = 0; k < 60; ++k) {
        Complex z = rng.complex_in_disk(2.5);
        auto s = hqsf::surface_geometry(sphere_g(z), sphere_h(z));
        CHECK(std::abs(norm(s.X) - 1.0) < 1e-12);
        CHECK(std::abs(norm(s.N) - 1.0) < 1e-12);
        CHECK(oracle::rel(s.H, -1.0) < 1e-10);
        CHECK(oracle::rel(s.K, 1.0) < 1e-10);
        CHECK(oracle::rel(s.psi, 1.0) < 1e-10);
        CHECK(oracle::rel(s.lambda, 1.0) < 1e-10);
    }
}

TEST_CASE("surface_geometry: third form is 4|g'|^2/T^2 regardless of h") {
    auto s = hqsf::surface_geometry(sphere_g({0, 0}), sphere_h({0, 0}));
    CHECK(s.L11 == 4.0);
    CHECK(s.L22 == 4.0);
}

TEST_CASE("surface_geometry: support and distance identities") {
    oracle::Rng rng(13);
    for (const auto& data : property_data()) {
        for (int k = 0; k < 40; ++k) {
            Complex z = rng.complex_in_disk(1.2);
            ComplexJet g = data.g.jet(z);
            ScalarJet2 h = data.h(z);
            auto forms = hqsf::intermediate_forms(g, h);
            if (hqsf::is_degenerate(forms)) continue;
            auto s = hqsf::surface_geometry(g, h);
            CHECK(oracle::rel(s.psi, dot(s.X, s.N)) < 1e-9);
            CHECK(oracle::rel(s.lambda, dot(s.X, s.X)) < 1e-9);
            CHECK(oracle::rel(s.K * s.P, 4.0) < 1e-10);
            // Shape-operator trace route to the mean curvature.
            double det = s.a11 * s.a22 - s.a12 * s.a12;
            double h_alt = (s.a22 * s.b11 - 2.0 * s.a12 * s.b12 + s.a11 * s.b22) /
                           (2.0 * det);
            CHECK(oracle::rel(s.H, h_alt) < 1e-8);
        }
    }
}

TEST_CASE("surface_geometry: forms agree with finite differences of X and N") {
    oracle::Rng rng(17);
    for (const auto& data : property_data()) {
        auto position = [&](double x, double y) {
            return hqsf::immersion(data.g.jet({x, y}), data.h({x, y}));
        };
        auto normal = [&](double x, double y) {
            return hqsf::gauss_map(data.g.jet({x, y}));
        };
        int checked = 0;
        for (int k = 0; k < 60 && checked < 12; ++k) {
            Complex z = rng.complex_in_disk(1.0);
            ComplexJet g = data.g.jet(z);
            ScalarJet2 h = data.h(z);
            if (hqsf::is_degenerate(hqsf::intermediate_forms(g, h))) continue;
            ++checked;
            auto s = hqsf::surface_geometry(g, h);
            double x = z.real(), y = z.imag();

            auto d1 = [&](auto f) {
                return oracle::derivative([&](double t) { return f(t, y); }, x);
            };
            auto d2 = [&](auto f) {
                return oracle::derivative([&](double t) { return f(x, t); }, y);
            };
            Vec3 x1 = d1(position), x2 = d2(position);
            Vec3 n1 = d1(normal), n2 = d2(normal);

            // Tangency of the normal.
            CHECK(std::abs(dot(s.N, x1)) < 1e-5 * (1.0 + norm(x1)));
            CHECK(std::abs(dot(s.N, x2)) < 1e-5 * (1.0 + norm(x2)));

            // N equals the normalized cross product up to sign.
            Vec3 cr = cross(x1, x2);
            Vec3 unit_cr = (1.0 / norm(cr)) * cr;
            double align = std::abs(dot(unit_cr, s.N));
            CHECK(std::abs(align - 1.0) < 1e-5);

            // First and second fundamental forms.
            CHECK(oracle::rel(s.a11, dot(x1, x1)) < 1e-5);
            CHECK(oracle::rel(s.a12, dot(x1, x2)) < 1e-5);
            CHECK(oracle::rel(s.a22, dot(x2, x2)) < 1e-5);
            CHECK(oracle::rel(s.b11, -dot(n1, x1)) < 1e-5);
            CHECK(oracle::rel(s.b12, -dot(n1, x2)) < 1e-5);
            CHECK(oracle::rel(s.b12, -dot(n2, x1)) < 1e-5);
            CHECK(oracle::rel(s.b22, -dot(n2, x2)) < 1e-5);

            // Third form: diagonal 4|g'|^2/T^2, zero cross term.
            CHECK(oracle::rel(s.L11, dot(n1, n1)) < 1e-5);
            CHECK(oracle::rel(s.L22, dot(n2, n2)) < 1e-5);
            CHECK(std::abs(dot(n1, n2)) < 1e-5 * (1.0 + dot(n1, n1)));

            // First form positive definite at regular points.
            CHECK(s.a11 > 0.0);
            CHECK(s.a11 * s.a22 - s.a12 * s.a12 > 0.0);
        }
        CHECK(checked >= 8);
    }
}
