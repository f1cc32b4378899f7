#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "swlift/report.hpp"

namespace swlift {

using complexd = std::complex<double>;
using WeylValue = Eigen::Vector2cd;   // one chirality at a point
using DiracValue = Eigen::Vector4cd;  // both chiralities, components 0,1 = plus, 2,3 = minus
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

// Pointwise two-form with complex coefficients on the basis
// e_i ^ e_j, (i,j) in (12),(13),(14),(23),(24),(34) in that order.
struct TwoFormFibre {
    std::array<complexd, 6> c{};

    static constexpr std::array<std::pair<int, int>, 6> pairs = {
        std::pair{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

    double norm_sq() const {
        double s = 0;
        for (const auto& z : c) s += std::norm(z);
        return s;
    }
    TwoFormFibre operator+(const TwoFormFibre& o) const {
        TwoFormFibre r;
        for (int p = 0; p < 6; ++p) r.c[p] = c[p] + o.c[p];
        return r;
    }
    TwoFormFibre operator-(const TwoFormFibre& o) const {
        TwoFormFibre r;
        for (int p = 0; p < 6; ++p) r.c[p] = c[p] - o.c[p];
        return r;
    }
    TwoFormFibre operator*(complexd z) const {
        TwoFormFibre r;
        for (int p = 0; p < 6; ++p) r.c[p] = c[p] * z;
        return r;
    }
};

TwoFormFibre hodge_star(const TwoFormFibre& w);
std::pair<TwoFormFibre, TwoFormFibre> selfdual_split(const TwoFormFibre& w);

// Frozen Clifford module data for flat R^4: v.w + w.v = -2<v,w>, spinors C^2+C^2,
// volume form acting as -1 on the plus chirality and +1 on the minus chirality.
struct CliffordModel {
    std::array<Mat4, 4> gamma;      // gamma_1..gamma_4, anti-Hermitian, square -Id
    std::array<Mat2, 4> block_pm;   // 2x2 blocks of gamma_i mapping plus -> minus
    std::array<Mat2, 4> block_mp;   // blocks mapping minus -> plus
    Mat4 dvol;                      // gamma_1 gamma_2 gamma_3 gamma_4 = diag(-1,-1,1,1)
    Mat4 gamma_fiber;               // i * dvol; fifth anticommuting element, square -Id
    Mat4 weyl_plus, weyl_minus;     // chirality projectors
    std::array<Mat2, 3> pauli;      // sigma_1..sigma_3
    std::array<TwoFormFibre, 3> sd_basis;   // gamma(i*sd_basis[k]) = 2 sigma_k on plus
    std::array<TwoFormFibre, 3> asd_basis;
    TwoFormFibre kahler;            // self-dual form with gamma(i*kahler) = 2 diag(1,-1) on plus
    Mat4 conj;                      // real-Clifford conjugation intertwiner, solved at build
};

CliffordModel build_clifford_model();
const CliffordModel& clifford_model();

Mat4 gamma_vector(const Eigen::Vector4d& v);
Mat4 gamma_vector(const Eigen::Vector4cd& v);
Mat4 gamma_two_form(const TwoFormFibre& w);
// Restriction of gamma_two_form to one chirality block (two-forms act block-diagonally).
Mat2 gamma_two_form_plus(const TwoFormFibre& w);
Mat2 gamma_two_form_minus(const TwoFormFibre& w);

DiracValue embed_plus(const WeylValue& v);
DiracValue embed_minus(const WeylValue& v);

// Quadratic moment map: imaginary self-dual two-form with
// gamma(sigma(phi)) = phi phi^dag - 1/2 |phi|^2 Id on the plus chirality.
TwoFormFibre sigma(const WeylValue& phi);
// Returns (gamma(sigma(phi)) phi, 1/2 |phi|^2 phi); the two must agree.
std::pair<WeylValue, WeylValue> sigma_cubic_check(const WeylValue& phi);
// Recover the imaginary self-dual tau from v = gamma(tau) phi at a point with phi != 0.
TwoFormFibre sigma_frame_solve(const WeylValue& phi, const WeylValue& v);

// True iff gamma(tau) phi = 0 forces tau = 0 or phi = 0 at the given tolerance.
// Precondition: tau imaginary self-dual.
bool kernel_dichotomy_check(const TwoFormFibre& tau, const WeylValue& phi, double tol = 1e-12);

// Anti-linear conjugation; intertwines real Clifford multiplication,
// preserves chirality, is an isometry. Applied twice gives -phi (quaternionic).
DiracValue charge_conjugate_fibre(const DiracValue& phi);

struct IdentityReport {
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<CheckResult> checks;
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

IdentityReport identity_suite(std::uint64_t seed, int trials);

}
