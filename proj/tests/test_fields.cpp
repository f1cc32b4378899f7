#include <doctest.h>

#include <swlift/fields.hpp>
#include <swlift/rng.hpp>

using namespace swlift;

namespace {
const complexd J{0.0, 1.0};

double rel_dev(const SpinorField& a, const SpinorField& b) {
    double d = 0, s = 0;
    for (std::size_t i = 0; i < a.v.size(); ++i) {
        d = std::max(d, std::abs(a.v[i] - b.v[i]));
        s = std::max(s, std::abs(b.v[i]));
    }
    return d / (1.0 + s);
}
}

TEST_CASE("spectral derivative is exact on plane waves and commutes") {
    Grid4 g(8);
    // Oracle: d/dx1 of exp(i(2 x1 - x3)) = 2i exp(...), evaluated directly.
    SpinorField f(g, Chirality::plus), want(g, Chirality::plus);
    for (std::int64_t s = 0; s < g.volume(); ++s) {
        auto c = g.coords(s);
        complexd ph = std::exp(J * (2.0 * g.coordinate(c[0]) - g.coordinate(c[2])));
        f.v[s * 2] = ph;
        f.v[s * 2 + 1] = 0.5 * ph;
        want.v[s * 2] = 2.0 * J * ph;
        want.v[s * 2 + 1] = J * ph;
    }
    CHECK(rel_dev(spectral_partial(f, 0), want) <= 1e-13);

    SpinorField r = random_spinor(g, 5, 2, Chirality::full);
    SpinorField d01 = spectral_partial(spectral_partial(r, 0), 1);
    SpinorField d10 = spectral_partial(spectral_partial(r, 1), 0);
    CHECK(rel_dev(d01, d10) <= 1e-12);
}

TEST_CASE("band-limited product rule on a fine grid") {
    Grid4 g(16);
    auto f = random_real_scalar(g, 3, 2, false);
    auto h = random_real_scalar(g, 4, 2, false);
    std::vector<double> prod(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) prod[i] = f[i] * h[i];
    auto dp = spectral_partial_real(g, prod, 2);
    auto df = spectral_partial_real(g, f, 2);
    auto dh = spectral_partial_real(g, h, 2);
    double dev = 0, scale = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        dev = std::max(dev, std::abs(dp[i] - f[i] * dh[i] - h[i] * df[i]));
        scale = std::max(scale, std::abs(dp[i]));
    }
    CHECK(dev / (1.0 + scale) <= 1e-11);
}

TEST_CASE("curvature: frozen value, Bianchi, flatness of holonomy") {
    Grid4 g(8);
    // Oracle: a_2 = sin(x1) gives F = i cos(x1) dx1^dx2 and nothing else.
    GaugeField A(g);
    for (std::int64_t s = 0; s < g.volume(); ++s)
        A.a[1][s] = std::sin(g.coordinate(g.coords(s)[0]));
    A.holonomy = {0.3, -0.7, 0.1, 0.9};
    TwoFormField F = curvature(A);
    double dev = 0;
    for (std::int64_t s = 0; s < g.volume(); ++s) {
        complexd want = J * std::cos(g.coordinate(g.coords(s)[0]));
        dev = std::max(dev, std::abs(F.v[s * 6] - want));
        for (int p = 1; p < 6; ++p) dev = std::max(dev, std::abs(F.v[s * 6 + p]));
    }
    CHECK(dev <= 1e-13);

    // Bianchi: dF = 0, i.e. d_i F_jk - d_j F_ik + d_k F_ij = 0 for i<j<k.
    GaugeField R = random_gauge(g, 17, 2, 0.5);
    TwoFormField FR = curvature(R);
    double bianchi = 0;
    const std::array<std::array<int, 3>, 4> triples{{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
    for (auto [i, j, k] : triples) {
        auto comp = [&](int a, int b) {
            cvector out(g.volume());
            for (std::int64_t s = 0; s < g.volume(); ++s) {
                int p = 0;
                for (; p < 6; ++p)
                    if (TwoFormFibre::pairs[p] == std::pair{a, b}) break;
                out[s] = FR.v[s * 6 + p];
            }
            return out;
        };
        cvector t1 = spectral::partial(g, comp(j, k), 1, i);
        cvector t2 = spectral::partial(g, comp(i, k), 1, j);
        cvector t3 = spectral::partial(g, comp(i, j), 1, k);
        for (std::int64_t s = 0; s < g.volume(); ++s)
            bianchi = std::max(bianchi, std::abs(t1[s] - t2[s] + t3[s]));
    }
    CHECK(bianchi <= 1e-11);

    // Pure holonomy is flat.
    GaugeField H(g);
    H.holonomy = {1.5, 0.2, 0.0, -3.0};
    CHECK(l2_norm(curvature(H)) <= 1e-14);
}

TEST_CASE("dirac4 symbol on plane waves") {
    Grid4 g(8);
    // Oracle: A = 0, phi = exp(i k.x) phi0 gives D phi = i gamma(k) phi0 exp(i k.x),
    // with gamma(k) evaluated directly from the fibre model.
    GaugeField A(g);
    Eigen::Vector4d k(1, -2, 0, 1);
    WeylValue phi0(complexd(0.3, -1.0), complexd(2.0, 0.1));
    SpinorField phi(g, Chirality::plus);
    for (std::int64_t s = 0; s < g.volume(); ++s) {
        auto c = g.coords(s);
        double kx = 0;
        for (int m = 0; m < 4; ++m) kx += k(m) * g.coordinate(c[m]);
        complexd ph = std::exp(J * kx);
        phi.v[s * 2] = ph * phi0(0);
        phi.v[s * 2 + 1] = ph * phi0(1);
    }
    Charge q{1};  // q = 1/2
    SpinorField D = dirac4(A, q, phi);
    DiracValue sym = J * gamma_vector(k) * embed_plus(phi0);
    double dev = 0;
    for (std::int64_t s = 0; s < g.volume(); ++s) {
        auto c = g.coords(s);
        double kx = 0;
        for (int m = 0; m < 4; ++m) kx += k(m) * g.coordinate(c[m]);
        complexd ph = std::exp(J * kx);
        dev = std::max(dev, std::abs(D.v[s * 2] - ph * sym(2)));
        dev = std::max(dev, std::abs(D.v[s * 2 + 1] - ph * sym(3)));
    }
    CHECK(dev <= 1e-12);

    // Holonomy shifts the symbol: with h = (2,0,0,0), q h = (1,0,0,0) adds to k.
    GaugeField H(g);
    H.holonomy = {2, 0, 0, 0};
    SpinorField DH = dirac4(H, q, phi);
    Eigen::Vector4d kh = k + Eigen::Vector4d(1, 0, 0, 0);
    DiracValue symh = J * gamma_vector(kh) * embed_plus(phi0);
    dev = 0;
    for (std::int64_t s = 0; s < g.volume(); ++s) {
        auto c = g.coords(s);
        double kx = 0;
        for (int m = 0; m < 4; ++m) kx += k(m) * g.coordinate(c[m]);
        complexd ph = std::exp(J * kx);
        dev = std::max(dev, std::abs(DH.v[s * 2] - ph * symh(2)));
        dev = std::max(dev, std::abs(DH.v[s * 2 + 1] - ph * symh(3)));
    }
    CHECK(dev <= 1e-12);
}

TEST_CASE("dirac4 is formally self-adjoint for the L2 pairing") {
    Grid4 g(8);
    GaugeField A = random_gauge(g, 21, 2, 0.4);
    Charge q{3};
    SpinorField f = random_spinor(g, 22, 2, Chirality::full);
    SpinorField h = random_spinor(g, 23, 2, Chirality::full);
    complexd lhs = l2_inner(dirac4(A, q, f), h);
    complexd rhs = l2_inner(f, dirac4(A, q, h));
    CHECK(std::abs(lhs - rhs) <= 1e-11 * (1.0 + std::abs(rhs)));
}

TEST_CASE("conjugated data intertwines dirac4") {
    // conj(D_{A,q} phi) = D_{-A,q} conj(phi), fibre conjugation included.
    Grid4 g(8);
    GaugeField A = random_gauge(g, 31, 2, 0.7);
    Charge q{2};
    SpinorField phi = random_spinor(g, 33, 2, Chirality::full);

    GaugeField Abar(g);
    for (int m = 0; m < 4; ++m) {
        Abar.holonomy[m] = -A.holonomy[m];
        for (std::int64_t s = 0; s < g.volume(); ++s) Abar.a[m][s] = -A.a[m][s];
    }
    SpinorField phibar(g, Chirality::full);
    for (std::int64_t s = 0; s < g.volume(); ++s) {
        DiracValue d;
        for (int c = 0; c < 4; ++c) d(c) = phi.v[s * 4 + c];
        DiracValue cd = charge_conjugate_fibre(d);
        for (int c = 0; c < 4; ++c) phibar.v[s * 4 + c] = cd(c);
    }
    SpinorField lhs = dirac4(Abar, q, phibar);
    SpinorField rhs(g, Chirality::full);
    SpinorField D = dirac4(A, q, phi);
    for (std::int64_t s = 0; s < g.volume(); ++s) {
        DiracValue d;
        for (int c = 0; c < 4; ++c) d(c) = D.v[s * 4 + c];
        DiracValue cd = charge_conjugate_fibre(d);
        for (int c = 0; c < 4; ++c) rhs.v[s * 4 + c] = cd(c);
    }
    CHECK(rel_dev(lhs, rhs) <= 1e-11);

    // Curvature flips sign with the connection.
    TwoFormField F = curvature(A), Fb = curvature(Abar);
    double dev = 0;
    for (std::size_t i = 0; i < F.v.size(); ++i) dev = std::max(dev, std::abs(F.v[i] + Fb.v[i]));
    CHECK(dev <= 1e-12);
}

TEST_CASE("parseval for the l2 pairing") {
    Grid4 g(8);
    SpinorField f = random_spinor(g, 41, 2, Chirality::plus);
    double site = l2_norm_sq(f);
    cvector spec = f.v;
    spectral::forward(g, spec, 2);
    double fourier = 0;
    for (const auto& z : spec) fourier += std::norm(z);
    fourier *= g.cell_volume() / double(g.volume());
    CHECK(std::abs(site - fourier) <= 1e-10 * (1.0 + site));
}

TEST_CASE("random fields are band-limited and reproducible") {
    Grid4 g(8);
    SpinorField a = random_spinor(g, 99, 2, Chirality::plus);
    SpinorField b = random_spinor(g, 99, 2, Chirality::plus);
    CHECK(a.v == b.v);

    cvector spec = a.v;
    spectral::forward(g, spec, 2);
    double out_of_band = 0;
    std::int64_t s = 0;
    for (int i0 = 0; i0 < g.n; ++i0)
        for (int i1 = 0; i1 < g.n; ++i1)
            for (int i2 = 0; i2 < g.n; ++i2)
                for (int i3 = 0; i3 < g.n; ++i3, ++s) {
                    bool in = std::abs(g.frequency(i0)) <= 2 && std::abs(g.frequency(i1)) <= 2 &&
                              std::abs(g.frequency(i2)) <= 2 && std::abs(g.frequency(i3)) <= 2;
                    if (!in)
                        for (int c = 0; c < 2; ++c)
                            out_of_band = std::max(out_of_band, std::abs(spec[s * 2 + c]));
                }
    CHECK(out_of_band <= 1e-12 * g.volume());

    CHECK_THROWS(random_spinor(g, 1, 3, Chirality::plus));  // kmax > n/4
    CHECK_THROWS(Grid4(7));
}
