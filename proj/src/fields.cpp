#include "swlift/fields.hpp"

#include <cmath>
#include <stdexcept>

#include "swlift/rng.hpp"

namespace swlift {

namespace {
const complexd J{0.0, 1.0};

void check_same_grid(const Grid4& a, const Grid4& b, const char* what) {
    if (!(a == b)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}
}

SpinorField spectral_partial(const SpinorField& f, int axis) {
    SpinorField out = f;
    out.v = spectral::partial(f.grid, f.v, f.ncomp(), axis);
    return out;
}

std::vector<double> spectral_partial_real(const Grid4& g, const std::vector<double>& f, int axis) {
    cvector tmp(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) tmp[i] = f[i];
    tmp = spectral::partial(g, tmp, 1, axis);
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = tmp[i].real();
    return out;
}

TwoFormField curvature(const GaugeField& A) {
    TwoFormField F(A.grid);
    std::array<std::array<std::vector<double>, 4>, 4> da;  // da[mu][nu] = d_mu a_nu
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            if (mu != nu) da[mu][nu] = spectral_partial_real(A.grid, A.a[nu], mu);
    const std::int64_t vol = A.grid.volume();
    for (int p = 0; p < 6; ++p) {
        auto [i, j] = TwoFormFibre::pairs[p];
        for (std::int64_t s = 0; s < vol; ++s)
            F.v[s * 6 + p] = J * (da[i][j][s] - da[j][i][s]);
    }
    return F;
}

SpinorField dirac4(const GaugeField& A, Charge q, const SpinorField& phi) {
    check_same_grid(A.grid, phi.grid, "dirac4");
    const auto& md = clifford_model();
    const std::int64_t vol = phi.grid.volume();
    const double qv = q.value();

    Chirality out_chi = phi.chirality == Chirality::plus    ? Chirality::minus
                        : phi.chirality == Chirality::minus ? Chirality::plus
                                                            : Chirality::full;
    SpinorField out(phi.grid, out_chi);

    for (int mu = 0; mu < 4; ++mu) {
        SpinorField d = spectral_partial(phi, mu);
        const auto& amu = A.a[mu];
        const double hmu = A.holonomy[mu];
        const int nc = phi.ncomp();
        for (std::int64_t s = 0; s < vol; ++s) {
            complexd coup = J * qv * (amu[s] + hmu);
            complexd cov[4];
            for (int c = 0; c < nc; ++c) cov[c] = d.v[s * nc + c] + coup * phi.v[s * nc + c];
            // gamma_mu in blocks: plus components feed the minus output and vice versa.
            if (phi.chirality == Chirality::plus) {
                const Mat2& E = md.block_pm[mu];
                for (int r = 0; r < 2; ++r)
                    out.v[s * 2 + r] += E(r, 0) * cov[0] + E(r, 1) * cov[1];
            } else if (phi.chirality == Chirality::minus) {
                const Mat2& G = md.block_mp[mu];
                for (int r = 0; r < 2; ++r)
                    out.v[s * 2 + r] += G(r, 0) * cov[0] + G(r, 1) * cov[1];
            } else {
                const Mat2& E = md.block_pm[mu];
                const Mat2& G = md.block_mp[mu];
                for (int r = 0; r < 2; ++r) {
                    out.v[s * 4 + r] += G(r, 0) * cov[2] + G(r, 1) * cov[3];
                    out.v[s * 4 + 2 + r] += E(r, 0) * cov[0] + E(r, 1) * cov[1];
                }
            }
        }
    }
    return out;
}

complexd l2_inner(const SpinorField& f, const SpinorField& g) {
    check_same_grid(f.grid, g.grid, "l2_inner");
    if (f.chirality != g.chirality) throw std::invalid_argument("l2_inner: chirality mismatch");
    complexd s = 0;
    for (std::size_t i = 0; i < f.v.size(); ++i) s += std::conj(f.v[i]) * g.v[i];
    return s * f.grid.cell_volume();
}

double l2_norm_sq(const SpinorField& f) {
    double s = 0;
    for (const auto& z : f.v) s += std::norm(z);
    return s * f.grid.cell_volume();
}

double l2_norm(const SpinorField& f) { return std::sqrt(l2_norm_sq(f)); }

double l2_norm_sq(const TwoFormField& f) {
    double s = 0;
    for (const auto& z : f.v) s += std::norm(z);
    return s * f.grid.cell_volume();
}

double l2_norm(const TwoFormField& f) { return std::sqrt(l2_norm_sq(f)); }

SpinorField embed_full(const SpinorField& f) {
    if (f.chirality == Chirality::full) return f;
    SpinorField out(f.grid, Chirality::full);
    const int off = f.chirality == Chirality::plus ? 0 : 2;
    for (std::int64_t s = 0; s < f.grid.volume(); ++s) {
        out.v[s * 4 + off] = f.v[s * 2];
        out.v[s * 4 + off + 1] = f.v[s * 2 + 1];
    }
    return out;
}

SpinorField project_chirality(const SpinorField& full, Chirality part) {
    if (full.chirality != Chirality::full)
        throw std::invalid_argument("project_chirality: input must be full");
    if (part == Chirality::full) return full;
    SpinorField out(full.grid, part);
    const int off = part == Chirality::plus ? 0 : 2;
    for (std::int64_t s = 0; s < full.grid.volume(); ++s) {
        out.v[s * 2] = full.v[s * 4 + off];
        out.v[s * 2 + 1] = full.v[s * 4 + off + 1];
    }
    return out;
}

namespace {

void check_kmax(const Grid4& g, int kmax) {
    if (kmax < 0 || kmax > g.n / 4)
        throw std::invalid_argument("random field: kmax must satisfy 0 <= kmax <= n/4");
}

// Fill the spectrum of one component with unit-variance coefficients on the
// box |k_axis| <= kmax, in a fixed site order, then invert.
cvector band_limited_complex(const Grid4& g, Rng& rng, int kmax, int ncomp) {
    cvector spec(g.volume() * ncomp, complexd(0.0));
    const int n = g.n;
    std::int64_t nmodes = 0;
    std::int64_t s = 0;
    for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1)
            for (int i2 = 0; i2 < n; ++i2)
                for (int i3 = 0; i3 < n; ++i3, ++s) {
                    if (std::abs(g.frequency(i0)) > kmax || std::abs(g.frequency(i1)) > kmax ||
                        std::abs(g.frequency(i2)) > kmax || std::abs(g.frequency(i3)) > kmax)
                        continue;
                    ++nmodes;
                    for (int c = 0; c < ncomp; ++c) spec[s * ncomp + c] = rng.cnormal();
                }
    const double scale = double(g.volume()) / std::sqrt(double(nmodes));
    for (auto& z : spec) z *= scale;
    spectral::inverse(g, spec, ncomp);
    return spec;
}

}  // namespace

SpinorField random_spinor(const Grid4& g, std::uint64_t seed, int kmax, Chirality c) {
    check_kmax(g, kmax);
    Rng rng(seed);
    SpinorField f(g, c);
    f.v = band_limited_complex(g, rng, kmax, f.ncomp());
    return f;
}

std::vector<double> random_real_scalar(const Grid4& g, std::uint64_t seed, int kmax,
                                       bool zero_mean) {
    check_kmax(g, kmax);
    Rng rng(seed);
    cvector z = band_limited_complex(g, rng, kmax, 1);
    std::vector<double> out(z.size());
    double mean = 0;
    const double sqrt2 = std::sqrt(2.0);
    for (std::size_t i = 0; i < z.size(); ++i) {
        out[i] = sqrt2 * z[i].real();
        mean += out[i];
    }
    if (zero_mean) {
        mean /= double(out.size());
        for (auto& x : out) x -= mean;
    }
    return out;
}

GaugeField random_gauge(const Grid4& g, std::uint64_t seed, int kmax, double holonomy_scale) {
    GaugeField A(g);
    for (int mu = 0; mu < 4; ++mu)
        A.a[mu] = random_real_scalar(g, seed + 101 * (mu + 1), kmax, true);
    Rng rng(seed + 977);
    for (int mu = 0; mu < 4; ++mu) A.holonomy[mu] = holonomy_scale * rng.normal();
    return A;
}

TwoFormField random_imag_sd_twoform(const Grid4& g, std::uint64_t seed, int kmax) {
    const auto& md = clifford_model();
    TwoFormField F(g);
    for (int k = 0; k < 3; ++k) {
        auto ck = random_real_scalar(g, seed + 313 * (k + 1), kmax, false);
        for (std::int64_t s = 0; s < g.volume(); ++s)
            for (int p = 0; p < 6; ++p) F.v[s * 6 + p] += J * ck[s] * md.sd_basis[k].c[p];
    }
    return F;
}

}
