#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace swlift {

// Deterministic RNG: mt19937_64 plus explicit Box-Muller, so streams are
// reproducible across standard library implementations.
struct Rng {
    std::mt19937_64 gen;

    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double uniform() {  // in (0,1)
        return (double(gen() >> 11) + 0.5) * 0x1p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        double u = uniform(), v = uniform();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
    }
    std::complex<double> cnormal() {
        double u = uniform(), v = uniform();
        double r = std::sqrt(-std::log(u));
        double t = 2.0 * std::numbers::pi * v;
        return {r * std::cos(t), r * std::sin(t)};
    }
    int integer(int lo, int hi) {  // inclusive bounds
        return lo + int(gen() % std::uint64_t(hi - lo + 1));
    }
};

}
