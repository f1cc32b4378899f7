#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "swlift/clifford.hpp"
#include "swlift/grid.hpp"
#include "swlift/spectral.hpp"

namespace swlift {

enum class Chirality { plus, minus, full };

inline int ncomp_of(Chirality c) { return c == Chirality::full ? 4 : 2; }

// Spinor charge q in half-integers, stored doubled so it stays exact.
struct Charge {
    int doubled = 0;
    double value() const { return 0.5 * doubled; }
    bool operator==(const Charge&) const = default;
};

struct SpinorField {
    Grid4 grid;
    Chirality chirality = Chirality::plus;
    cvector v;  // site-major, ncomp_of(chirality) components per site

    SpinorField() = default;
    SpinorField(const Grid4& g, Chirality c)
        : grid(g), chirality(c), v(g.volume() * ncomp_of(c)) {}
    int ncomp() const { return ncomp_of(chirality); }
};

// U(1) connection A = i a on the charge-one line bundle: four real oscillatory
// component fields plus four holonomy constants (the flat part, kept exact).
struct GaugeField {
    Grid4 grid;
    std::array<std::vector<double>, 4> a;
    std::array<double, 4> holonomy{};

    GaugeField() = default;
    explicit GaugeField(const Grid4& g) : grid(g) {
        for (auto& c : a) c.assign(g.volume(), 0.0);
    }
};

// Two-form field with complex coefficients, pair order as TwoFormFibre.
struct TwoFormField {
    Grid4 grid;
    cvector v;  // 6 components per site

    TwoFormField() = default;
    explicit TwoFormField(const Grid4& g) : grid(g), v(g.volume() * 6) {}

    TwoFormFibre at(std::int64_t s) const {
        TwoFormFibre f;
        for (int p = 0; p < 6; ++p) f.c[p] = v[s * 6 + p];
        return f;
    }
    void set(std::int64_t s, const TwoFormFibre& f) {
        for (int p = 0; p < 6; ++p) v[s * 6 + p] = f.c[p];
    }
};

// Exact derivative of the band-limited interpolant, axis in 0..3.
SpinorField spectral_partial(const SpinorField& f, int axis);
std::vector<double> spectral_partial_real(const Grid4& g, const std::vector<double>& f, int axis);

// F_A = i da; holonomies are flat and do not contribute.
TwoFormField curvature(const GaugeField& A);

// Full Dirac operator sum_mu gamma_mu (d_mu + i q (a_mu + h_mu)); flips chirality.
SpinorField dirac4(const GaugeField& A, Charge q, const SpinorField& phi);

// L2 structure: site sums weighted by the cell volume (2 pi / n)^4.
complexd l2_inner(const SpinorField& f, const SpinorField& g);
double l2_norm(const SpinorField& f);
double l2_norm(const TwoFormField& f);
double l2_norm_sq(const SpinorField& f);
double l2_norm_sq(const TwoFormField& f);

SpinorField embed_full(const SpinorField& f);
SpinorField project_chirality(const SpinorField& full, Chirality part);

// Band-limited random data, Fourier support |k_axis| <= kmax per axis,
// unit site RMS, deterministic in the seed. Requires kmax <= n/4.
SpinorField random_spinor(const Grid4& g, std::uint64_t seed, int kmax, Chirality c);
std::vector<double> random_real_scalar(const Grid4& g, std::uint64_t seed, int kmax,
                                       bool zero_mean = true);
GaugeField random_gauge(const Grid4& g, std::uint64_t seed, int kmax, double holonomy_scale);
TwoFormField random_imag_sd_twoform(const Grid4& g, std::uint64_t seed, int kmax);

}
