#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace swlift {

// Uniform periodic grid on the 4-torus with side length 2*pi per axis.
// Sites are ordered lexicographically, last axis fastest.
struct Grid4 {
    int n = 0;

    Grid4() = default;
    explicit Grid4(int n_) : n(n_) {
        if (n < 4 || n % 2 != 0) throw std::invalid_argument("Grid4: n must be even and >= 4");
    }

    std::int64_t volume() const { return std::int64_t(n) * n * n * n; }
    double spacing() const { return 2.0 * std::numbers::pi / n; }
    double cell_volume() const { double h = spacing(); return h * h * h * h; }

    std::int64_t index(int i0, int i1, int i2, int i3) const {
        return ((std::int64_t(i0) * n + i1) * n + i2) * n + i3;
    }
    std::array<int, 4> coords(std::int64_t s) const {
        std::array<int, 4> c;
        c[3] = int(s % n); s /= n;
        c[2] = int(s % n); s /= n;
        c[1] = int(s % n); s /= n;
        c[0] = int(s);
        return c;
    }
    // Coordinate value of site index along one axis, in [0, 2*pi).
    double coordinate(int i) const { return spacing() * i; }

    // Signed integer frequency of FFT bin i, in [-n/2, n/2-1].
    int frequency(int i) const { return i < n / 2 ? i : i - n; }

    bool operator==(const Grid4&) const = default;
};

}
