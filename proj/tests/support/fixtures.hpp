#pragma once

// The built-in data sets used across the test suites: the unit sphere and the
// twelve bundled example surfaces (ex1..ex5 from holomorphic triples,
// ex6..ex12 rotation parameter sets).

#include <cmath>
#include <stdexcept>

#include "hqsf/rotation.hpp"
#include "hqsf/weierstrass.hpp"

namespace fixtures {

// f1 = 2^{-1/4}, f2 = 2^{-1/4} z, g = z, c = 1 gives h = (1+|z|^2)/2: the
// unit sphere.
inline hqsf::HQSFData sphere() {
    double q = std::pow(2.0, -0.25);
    hqsf::Expr z = hqsf::Expr::variable();
    return hqsf::HQSFData(hqsf::Expr::literal(q), hqsf::Expr::literal(q) * z, z, 1.0);
}

inline hqsf::HQSFData example(int k) {
    switch (k) {
    case 1: return {hqsf::parse("z"), hqsf::parse("exp(z)"), hqsf::parse("z^2"), -1.0};
    case 2: return {hqsf::parse("cosh(z)"), hqsf::parse("sinh(z)"), hqsf::parse("z^3"), 2.0};
    case 3: return {hqsf::parse("z^3"), hqsf::parse("z^4"), hqsf::parse("z^5"), -1.0};
    case 4: return {hqsf::parse("sin(z)"), hqsf::parse("cos(z)"), hqsf::parse("exp(2*z)"), -1.0};
    case 5: return {hqsf::parse("exp(z)"), hqsf::parse("-exp(-z)"), hqsf::parse("z"), -1.0};
    default: throw std::out_of_range("example index");
    }
}

inline hqsf::RotationParams rotation_example(int k) {
    using C = hqsf::Complex;
    switch (k) {
    case 6: return {1.0, 0.0, 1.0, C(-0.5, 0.0), 2.0, -1.0 / 3.0};
    case 7: return {2.0, 0.0, -0.5, C(0.0, 1.0 / 3.0), 1.0, -1.0};
    case 8: return {6.0, -1.0, 0.5, C(3.0, -1.0 / 3.0), 1.0, 1.0};
    case 9: return {4.0, 1.0, 0.5, C(3.0, 0.0), 1.0, 0.0};
    case 10: return {4.0, -1.0, -2.0, C(-1.0, 0.0), 0.0, 2.0};
    case 11: return {3.0, 1.0, -1.0, C(1.0, -1.0), 1.0, -1.0};
    case 12: return {2.0, 1.0, 2.0, C(3.0, 0.0), 1.0, 1.0};
    default: throw std::out_of_range("rotation example index");
    }
}

} // namespace fixtures
