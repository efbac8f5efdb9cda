#include <doctest.h>

#include <cmath>

#include "hqsf/weierstrass.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using hqsf::Complex;
using hqsf::Expr;
using hqsf::HQSFData;
using hqsf::ScalarJet2;
using hqsf::Vec3;

namespace {

// Random point where the data is comfortably regular: |g'| bounded away from
// zero, Wronskian non-negligible, regularity factor past the epsilon test.
Complex regular_point(const HQSFData& d, oracle::Rng& rng, double radius = 1.3) {
    for (int attempt = 0; attempt < 400; ++attempt) {
        Complex z = rng.complex_in_disk(radius);
        try {
            if (std::abs(hqsf::eval(d.g().df, z)) < 1e-2) continue;
            if (d.wronskian_negligible(z)) continue;
            ScalarJet2 h = hqsf::build_scalar_field(d, z);
            if (hqsf::is_degenerate(hqsf::intermediate_forms(d.g().jet(z), h)))
                continue;
            return z;
        } catch (const hqsf::Error&) {
            continue;
        }
    }
    throw std::runtime_error("no regular point found");
}

} // namespace

TEST_CASE("build_scalar_field: sphere and ex1 values") {
    HQSFData sphere = fixtures::sphere();
    ScalarJet2 h = hqsf::build_scalar_field(sphere, {1, 1});
    CHECK(oracle::rel(h.v, 1.5) < 1e-14); // h = (1+|z|^2)/2 at |z|^2 = 2

    HQSFData ex1 = fixtures::example(1);
    double e2 = std::exp(2.0);
    ScalarJet2 h1 = hqsf::build_scalar_field(ex1, {1, 0});
    CHECK(oracle::rel(h1.v, 0.5 * (1.0 - e2) * (1.0 - e2)) < 1e-14);

    // Radial minimum of (1+|z|^2)/2 at the origin.
    ScalarJet2 h0 = hqsf::build_scalar_field(sphere, {0, 0});
    CHECK(h0.d1 == 0.0);
    CHECK(h0.d2 == 0.0);
}

TEST_CASE("build_scalar_field: gradient matches the closed form") {
    // grad h = 2h (2(f1 conj f1' + c f2 conj f2')/A - g conj g'/T).
    oracle::Rng rng(31);
    for (int k = 1; k <= 5; ++k) {
        HQSFData d = fixtures::example(k);
        int checked = 0;
        while (checked < 25) {
            Complex z = regular_point(d, rng);
            auto f1 = d.f1().jet(z), f2 = d.f2().jet(z), g = d.g().jet(z);
            double a = std::norm(f1.v) + d.c() * std::norm(f2.v);
            if (std::abs(a) < 1e-3) continue; // the closed form divides by A
            ++checked;
            ScalarJet2 h = hqsf::build_scalar_field(d, z);
            Complex expected =
                2.0 * h.v *
                (2.0 * (f1.v * std::conj(f1.d1) + d.c() * f2.v * std::conj(f2.d1)) / a -
                 g.v * std::conj(g.d1) / (1.0 + std::norm(g.v)));
            CHECK(oracle::rel(h.grad(), expected) < 1e-12);
        }
    }
}

TEST_CASE("build_scalar_field: jets match finite differences of h") {
    oracle::Rng rng(37);
    HQSFData d = fixtures::example(2);
    auto value = [&](double x, double y) {
        return hqsf::build_scalar_field(d, {x, y}).v;
    };
    for (int k = 0; k < 8; ++k) {
        Complex z = regular_point(d, rng, 1.0);
        ScalarJet2 h = hqsf::build_scalar_field(d, z);
        double x = z.real(), y = z.imag();
        CHECK(oracle::rel(h.d1, oracle::derivative([&](double t) { return value(t, y); }, x)) < 1e-6);
        CHECK(oracle::rel(h.d2, oracle::derivative([&](double t) { return value(x, t); }, y)) < 1e-6);
        CHECK(oracle::rel(h.d11, oracle::second_derivative([&](double t) { return value(t, y); }, x)) < 1e-6);
        CHECK(oracle::rel(h.d22, oracle::second_derivative([&](double t) { return value(x, t); }, y)) < 1e-6);
        CHECK(oracle::rel(h.d12, oracle::mixed_derivative(value, x, y)) < 1e-6);
    }
}

TEST_CASE("mu: fixtures") {
    // ex1 at z=2: W = (z-1) e^z = e^2, |g'| = 4, mu = 2 - ln 2.
    HQSFData ex1 = fixtures::example(1);
    CHECK(oracle::rel(hqsf::mu(ex1, {2, 0}), 2.0 - std::log(2.0)) < 1e-14);

    // Sphere: W = 2^{-1/2}, g' = 1 everywhere.
    HQSFData sphere = fixtures::sphere();
    oracle::Rng rng(41);
    for (int k = 0; k < 20; ++k)
        CHECK(oracle::rel(hqsf::mu(sphere, rng.complex_in_disk(2.0)),
                          std::log(std::sqrt(2.0))) < 1e-14);

    // W vanishing at a point.
    CHECK_THROWS_AS(hqsf::mu(ex1, {1, 0}), hqsf::DegenerateWronskian);
}

TEST_CASE("HQSFData: proportional pair is rejected") {
    Expr z = Expr::variable();
    CHECK_THROWS_AS(HQSFData(z, z, hqsf::parse("z^2"), -1.0),
                    hqsf::DegenerateWronskian);
    CHECK_THROWS_AS(HQSFData(hqsf::parse("exp(z)"), hqsf::parse("3*exp(z)"),
                             hqsf::parse("z"), 1.0),
                    hqsf::DegenerateWronskian);
}

TEST_CASE("immersion_closed: fixtures") {
    HQSFData sphere = fixtures::sphere();
    Vec3 x0 = hqsf::immersion_closed(sphere, {0, 0});
    CHECK(std::abs(x0.x) < 1e-15);
    CHECK(std::abs(x0.y) < 1e-15);
    CHECK(oracle::rel(x0.z, 1.0) < 1e-14);

    HQSFData ex1 = fixtures::example(1);
    CHECK_THROWS_AS(hqsf::immersion_closed(ex1, {0, 0}), hqsf::SingularGaussMap);

    HQSFData ex2 = fixtures::example(2);
    Vec3 closed = hqsf::immersion_closed(ex2, {1, 0});
    Vec3 generic = hqsf::immersion(ex2.g().jet({1, 0}),
                                   hqsf::build_scalar_field(ex2, {1, 0}));
    CHECK(oracle::rel(closed.x, generic.x) < 1e-10);
    CHECK(oracle::rel(closed.y, generic.y) < 1e-10);
    CHECK(oracle::rel(closed.z, generic.z) < 1e-10);
}

TEST_CASE("immersion_closed: agrees with the generic route everywhere") {
    oracle::Rng rng(43);
    for (int k = 0; k <= 5; ++k) {
        HQSFData d = (k == 0) ? fixtures::sphere() : fixtures::example(k);
        for (int n = 0; n < 100; ++n) {
            Complex z = regular_point(d, rng);
            Vec3 closed = hqsf::immersion_closed(d, z);
            Vec3 generic = hqsf::immersion(d.g().jet(z), hqsf::build_scalar_field(d, z));
            CHECK(oracle::rel(closed.x, generic.x) < 1e-10);
            CHECK(oracle::rel(closed.y, generic.y) < 1e-10);
            CHECK(oracle::rel(closed.z, generic.z) < 1e-10);
        }
    }
}

TEST_CASE("defining_residual: sphere is exact, examples stay under 1e-8") {
    oracle::Rng rng(47);
    HQSFData sphere = fixtures::sphere();
    for (int n = 0; n < 30; ++n)
        CHECK(hqsf::defining_residual(sphere, regular_point(sphere, rng)) <= 1e-12);

    HQSFData ex1 = fixtures::example(1);
    CHECK(hqsf::defining_residual(ex1, {0.5, 0.3}) <= 1e-8);

    for (int k = 2; k <= 5; ++k) {
        HQSFData d = fixtures::example(k);
        for (int n = 0; n < 50; ++n)
            CHECK(hqsf::defining_residual(d, regular_point(d, rng)) <= 1e-8);
    }
}

TEST_CASE("defining_residual: c = 0 reduces to the plain QSF relation") {
    HQSFData qsf(hqsf::parse("z"), hqsf::parse("exp(z)"), hqsf::parse("z^2"), 0.0);
    oracle::Rng rng(53);
    for (int n = 0; n < 50; ++n)
        CHECK(hqsf::defining_residual(qsf, regular_point(qsf, rng)) <= 1e-8);
}

TEST_CASE("identity_suite: sphere closed-form values") {
    HQSFData sphere = fixtures::sphere();
    // A lap(A) - |grad A|^2 = 2 = 4 c |W|^2 with W = 2^{-1/2}.
    Complex z{0.7, -0.4};
    auto f1 = sphere.f1().jet(z), f2 = sphere.f2().jet(z);
    ScalarJet2 a = hqsf::squared_modulus(f1) + hqsf::squared_modulus(f2);
    double bilinear = a.v * a.laplacian() - a.grad_norm_sq();
    CHECK(oracle::rel(bilinear, 2.0) < 1e-13);
    CHECK(oracle::rel(4.0 * std::norm(sphere.wronskian_at(z)), 2.0) < 1e-13);

    auto report = hqsf::identity_suite(sphere, z);
    CHECK(report.t_identity < 1e-13);
    CHECK(report.a_identity < 1e-13);
    CHECK(report.mu_consistency < 1e-13);
    CHECK(report.mu_laplacian_fd < 1e-7);
}

TEST_CASE("first form of ex1 agrees with finite differences at 1+0.4i") {
    HQSFData d = fixtures::example(1);
    Complex z{1.0, 0.4};
    auto s = hqsf::surface_geometry(d.g().jet(z), hqsf::build_scalar_field(d, z));
    auto position = [&](double x, double y) {
        return hqsf::immersion(d.g().jet({x, y}), hqsf::build_scalar_field(d, {x, y}));
    };
    Vec3 x1 = oracle::derivative([&](double t) { return position(t, z.imag()); },
                                 z.real());
    Vec3 x2 = oracle::derivative([&](double t) { return position(z.real(), t); },
                                 z.imag());
    CHECK(oracle::rel(s.a11, dot(x1, x1)) < 1e-5);
    CHECK(oracle::rel(s.a12, dot(x1, x2)) < 1e-5);
    CHECK(oracle::rel(s.a22, dot(x2, x2)) < 1e-5);
}

TEST_CASE("identity_suite: residuals across the example sets") {
    oracle::Rng rng(59);
    HQSFData ex3 = fixtures::example(3);
    auto at = hqsf::identity_suite(ex3, {1.0, 0.1});
    CHECK(at.t_identity <= 1e-9);
    CHECK(at.a_identity <= 1e-9);
    CHECK(at.mu_consistency <= 1e-9);
    CHECK(at.mu_laplacian_fd <= 1e-5);

    for (int k = 1; k <= 5; ++k) {
        HQSFData d = fixtures::example(k);
        for (int n = 0; n < 20; ++n) {
            Complex z = regular_point(d, rng);
            auto report = hqsf::identity_suite(d, z);
            CHECK(report.t_identity <= 1e-9);
            CHECK(report.a_identity <= 1e-9);
            CHECK(report.mu_consistency <= 1e-9);
            if (std::isfinite(report.mu_laplacian_fd))
                CHECK(report.mu_laplacian_fd <= 1e-5);
        }
    }
}
