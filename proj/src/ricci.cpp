#include "swlift/ricci.hpp"

#include <array>
#include <cmath>

namespace swlift {

Eigen::Matrix<double, 5, 5> ricci_kk(const TwoFormFibre& F, double r,
                                     const Eigen::Matrix4d& ric_base) {
    Eigen::Matrix<double, 5, 5> ric = Eigen::Matrix<double, 5, 5>::Zero();

    double fsq = 0;
    for (const auto& c : F.c) fsq += std::norm(c);
    ric(4, 4) = 0.5 * r * r * fsq;

    // F as an antisymmetric matrix of complex components.
    Eigen::Matrix4cd f = Eigen::Matrix4cd::Zero();
    for (int p = 0; p < 6; ++p) {
        auto [i, j] = TwoFormFibre::pairs[p];
        f(i, j) = F.c[p];
        f(j, i) = -F.c[p];
    }
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            double g = 0;
            for (int rho = 0; rho < 4; ++rho) g += (f(mu, rho) * std::conj(f(nu, rho))).real();
            ric(mu, nu) = ric_base(mu, nu) - 0.5 * r * r * g;
        }
    return ric;
}

namespace {

using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;

Mat5 metric(double c, double r, const Vec5& y) {
    Mat5 g = Mat5::Identity();
    double a1 = c * y(0);  // potential component along the second base axis
    g(4, 4) = r * r;
    g(1, 4) = g(4, 1) = r * r * a1;
    g(1, 1) = 1.0 + r * r * a1 * a1;
    return g;
}

// Christoffel symbols at y by central differences of the metric.
std::array<Mat5, 5> christoffel(double c, double r, const Vec5& y, double h) {
    std::array<Mat5, 5> dg;
    for (int ax = 0; ax < 5; ++ax) {
        Vec5 yp = y, ym = y;
        yp(ax) += h;
        ym(ax) -= h;
        dg[ax] = (metric(c, r, yp) - metric(c, r, ym)) / (2.0 * h);
    }
    Mat5 ginv = metric(c, r, y).inverse();
    std::array<Mat5, 5> gamma;  // gamma[i](j,k) = Gamma^i_{jk}
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            for (int k = 0; k < 5; ++k) {
                double s = 0;
                for (int l = 0; l < 5; ++l)
                    s += 0.5 * ginv(i, l) * (dg[j](l, k) + dg[k](l, j) - dg[l](j, k));
                gamma[i](j, k) = s;
            }
    return gamma;
}

}

Eigen::Matrix<double, 5, 5> ricci_coordinate_oracle(double c, double r) {
    const double h = 1e-4;
    const Vec5 p{0.3, 0.7, -0.2, 0.5, 0.9};

    std::array<Mat5, 5> gamma = christoffel(c, r, p, h);
    std::array<std::array<Mat5, 5>, 5> dgamma;  // dgamma[ax][i](j,k)
    for (int ax = 0; ax < 5; ++ax) {
        Vec5 yp = p, ym = p;
        yp(ax) += h;
        ym(ax) -= h;
        auto gp = christoffel(c, r, yp, h);
        auto gm = christoffel(c, r, ym, h);
        for (int i = 0; i < 5; ++i) dgamma[ax][i] = (gp[i] - gm[i]) / (2.0 * h);
    }

    // Ric_{sn} = d_m Gamma^m_{ns} - d_n Gamma^m_{ms} + Gamma^m_{ml} Gamma^l_{ns}
    //           - Gamma^m_{nl} Gamma^l_{ms}
    Mat5 ric_coord = Mat5::Zero();
    for (int s = 0; s < 5; ++s)
        for (int n = 0; n < 5; ++n) {
            double v = 0;
            for (int m = 0; m < 5; ++m) {
                v += dgamma[m][m](n, s) - dgamma[n][m](m, s);
                for (int l = 0; l < 5; ++l)
                    v += gamma[m](m, l) * gamma[l](n, s) - gamma[m](n, l) * gamma[l](m, s);
            }
            ric_coord(s, n) = v;
        }

    // Contract into the orthonormal frame e_mu* = d_mu - a_mu d_theta, K/r.
    Mat5 frame = Mat5::Zero();  // frame(a, i): coordinate components of frame vector a
    for (int mu = 0; mu < 4; ++mu) frame(mu, mu) = 1.0;
    frame(1, 4) = -c * p(0);
    frame(4, 4) = 1.0 / r;

    Mat5 ric = Mat5::Zero();
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) {
            double v = 0;
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j) v += frame(a, i) * frame(b, j) * ric_coord(i, j);
            ric(a, b) = v;
        }
    return ric;
}

}
