#pragma once

// Test-side numeric oracles: plain central differences with one Richardson
// extrapolation step, independent of any derivative machinery in the library.

#include <cmath>
#include <complex>
#include <random>

namespace oracle {

using Complex = std::complex<double>;

inline double rel(double a, double b) {
    return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b)));
}

inline double rel(Complex a, Complex b) {
    return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b)));
}

// d/dt f(t) by central difference with one Richardson step, default h = 1e-4.
template <typename F>
auto derivative(const F& f, double t, double h = 1e-4) {
    auto d = [&](double hh) { return (1.0 / (2.0 * hh)) * (f(t + hh) - f(t - hh)); };
    return (1.0 / 3.0) * (4.0 * d(h / 2) - d(h));
}

// Second differences divide by h^2, so the default step is larger to keep
// round-off below truncation.
template <typename F>
auto second_derivative(const F& f, double t, double h = 1e-3) {
    auto d = [&](double hh) {
        return (1.0 / (hh * hh)) * (f(t + hh) - 2.0 * f(t) + f(t - hh));
    };
    return (1.0 / 3.0) * (4.0 * d(h / 2) - d(h));
}

// d^2/(ds dt) f(s,t) at (s,t) via the 4-point cross stencil + Richardson.
template <typename F>
auto mixed_derivative(const F& f, double s, double t, double h = 1e-4) {
    auto d = [&](double hh) {
        return (1.0 / (4.0 * hh * hh)) *
               (f(s + hh, t + hh) - f(s + hh, t - hh) - f(s - hh, t + hh) +
                f(s - hh, t - hh));
    };
    return (1.0 / 3.0) * (4.0 * d(h / 2) - d(h));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    Complex complex_in_disk(double radius) {
        for (;;) {
            double x = uniform(-radius, radius);
            double y = uniform(-radius, radius);
            if (x * x + y * y <= radius * radius) return {x, y};
        }
    }

    int pick(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }

private:
    std::mt19937_64 engine_;
};

} // namespace oracle
