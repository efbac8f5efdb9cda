#pragma once

// Randomized valid rotation parameter sets, one generator per discriminant
// case. Coefficients are kept away from zero so the solved pair (f1, f2)
// stays independent (k1 k2 != 0 in the split case, k2 != 0 in the repeated
// case, (k1,k2) != 0 in the oscillatory case).

#include <cmath>

#include "hqsf/rotation.hpp"
#include "support/oracles.hpp"

namespace testgen {

inline double nonzero(oracle::Rng& rng, double lo, double hi) {
    double v = rng.uniform(lo, hi);
    return rng.pick(2) ? v : -v;
}

inline hqsf::RotationParams random_rotation(oracle::Rng& rng,
                                            hqsf::DiscriminantSign target) {
    for (;;) {
        hqsf::RotationParams p;
        p.k1 = nonzero(rng, 0.3, 1.5);
        p.k2 = nonzero(rng, 0.3, 1.5);
        switch (target) {
        case hqsf::DiscriminantSign::Positive: {
            p.c = nonzero(rng, 0.5, 2.0);
            p.c1 = rng.uniform(-1.5, 1.5);
            p.c2 = rng.uniform(-1.5, 1.5);
            p.z1 = rng.complex_in_disk(1.2);
            if (std::abs(p.z1) < 0.3) continue;
            break;
        }
        case hqsf::DiscriminantSign::Negative: {
            p.c = -rng.uniform(0.5, 2.0);
            p.c1 = rng.uniform(-0.6, 0.6);
            p.c2 = rng.uniform(-0.6, 0.6);
            double r = rng.uniform(0.8, 1.4);
            double phi = rng.uniform(0.0, 6.28318530717958648);
            p.z1 = hqsf::Complex(r * std::cos(phi), r * std::sin(phi));
            break;
        }
        case hqsf::DiscriminantSign::Zero: {
            p.c = -rng.uniform(0.5, 2.0);
            p.c1 = rng.uniform(-1.0, 1.0);
            p.c2 = rng.uniform(-1.0, 1.0);
            double diff = p.c * p.c1 - p.c2;
            if (std::abs(diff) < 0.3) continue;
            double r = std::abs(diff) / (2.0 * std::sqrt(-p.c));
            double phi = rng.uniform(0.0, 6.28318530717958648);
            p.z1 = hqsf::Complex(r * std::cos(phi), r * std::sin(phi));
            break;
        }
        }
        hqsf::CaseTag tag = hqsf::discriminant(p);
        if (tag.sign != target) continue;
        if (target != hqsf::DiscriminantSign::Zero && std::abs(tag.omega) < 0.1)
            continue;
        // Conditioning guards: keep the characteristic-root magnitudes small
        // enough that evaluating the solved pair over u1 in [-1.5,1.5],
        // u2 in [0,2pi) stays far from catastrophic cancellation. The checked
        // identities are exact; the samples just have to be representable.
        double mean = std::abs(p.c * p.c1 + p.c2) / (2.0 * std::abs(p.c));
        if (mean > 2.5) continue;
        if (target == hqsf::DiscriminantSign::Positive &&
            std::sqrt(tag.omega) / (2.0 * std::abs(p.c)) > 2.5)
            continue;
        if (target == hqsf::DiscriminantSign::Negative &&
            std::sqrt(-tag.omega) / (2.0 * std::abs(p.c)) > 0.9)
            continue;
        return p;
    }
}

} // namespace testgen
