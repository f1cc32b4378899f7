#include "swlift/clifford.hpp"

#include <cmath>
#include <stdexcept>

#include "swlift/rng.hpp"

namespace swlift {

namespace {
const complexd J{0.0, 1.0};
}

TwoFormFibre hodge_star(const TwoFormFibre& w) {
    // Pair order (12,13,14,23,24,34); star swaps 12<->34, 14<->23 and
    // sends 13 <-> -24 for the standard orientation e1^e2^e3^e4.
    TwoFormFibre r;
    r.c = {w.c[5], -w.c[4], w.c[3], w.c[2], -w.c[1], w.c[0]};
    return r;
}

std::pair<TwoFormFibre, TwoFormFibre> selfdual_split(const TwoFormFibre& w) {
    TwoFormFibre s = hodge_star(w), plus, minus;
    for (int p = 0; p < 6; ++p) {
        plus.c[p] = 0.5 * (w.c[p] + s.c[p]);
        minus.c[p] = 0.5 * (w.c[p] - s.c[p]);
    }
    return {plus, minus};
}

namespace {

Mat4 solve_conjugation_intertwiner(const std::array<Mat4, 4>& gamma) {
    // Solve gamma_j M = M conj(gamma_j) for all j; the solution space is one
    // complex line. Normalized to a unitary with the first big entry real positive.
    Eigen::MatrixXcd A(64, 16);
    A.setZero();
    int row = 0;
    for (int j = 0; j < 4; ++j) {
        Mat4 gc = gamma[j].conjugate();
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                for (int k = 0; k < 4; ++k) {
                    A(row, 4 * k + c) += gamma[j](r, k);
                    A(row, 4 * r + k) -= gc(k, c);
                }
                ++row;
            }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(15) > 1e-10 || sv(14) < 1e-6)
        throw std::runtime_error("conjugation intertwiner: nullspace is not one-dimensional");
    Eigen::VectorXcd m = svd.matrixV().col(15);
    Mat4 M;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) M(r, c) = m(4 * r + c);
    // Scale so M is unitary (M^dag M is a positive multiple of Id by Schur).
    double scale = std::sqrt((M.adjoint() * M).trace().real() / 4.0);
    M /= scale;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if (std::abs(M(r, c)) > 0.5) {
                M *= std::conj(M(r, c)) / std::abs(M(r, c));
                return M;
            }
    throw std::runtime_error("conjugation intertwiner: no usable entry");
}

}  // namespace

CliffordModel build_clifford_model() {
    CliffordModel md;
    md.pauli[0] << 0, 1, 1, 0;
    md.pauli[1] << 0, -J, J, 0;
    md.pauli[2] << 1, 0, 0, -1;

    // Quaternionic blocks: E_1 = Id, E_{k+1} = i sigma_k; then
    // gamma_j = [[0, -E_j^dag], [E_j, 0]] satisfies the -2 delta relations.
    std::array<Mat2, 4> E;
    E[0] = Mat2::Identity();
    for (int k = 0; k < 3; ++k) E[k + 1] = J * md.pauli[k];

    for (int j = 0; j < 4; ++j) {
        md.block_pm[j] = E[j];
        md.block_mp[j] = -E[j].adjoint();
        md.gamma[j].setZero();
        md.gamma[j].block<2, 2>(2, 0) = md.block_pm[j];
        md.gamma[j].block<2, 2>(0, 2) = md.block_mp[j];
    }

    md.dvol = md.gamma[0] * md.gamma[1] * md.gamma[2] * md.gamma[3];
    Mat4 expect = Mat4::Zero();
    expect.diagonal() << -1, -1, 1, 1;
    if ((md.dvol - expect).norm() > 1e-14)
        throw std::runtime_error("clifford model: volume form is not diag(-1,-1,1,1)");
    md.gamma_fiber = J * md.dvol;

    md.weyl_plus.setZero();
    md.weyl_plus(0, 0) = md.weyl_plus(1, 1) = 1;
    md.weyl_minus = Mat4::Identity() - md.weyl_plus;

    md.sd_basis[0].c = {1, 0, 0, 0, 0, 1};
    md.sd_basis[1].c = {0, 1, 0, 0, -1, 0};
    md.sd_basis[2].c = {0, 0, 1, 1, 0, 0};
    md.asd_basis[0].c = {1, 0, 0, 0, 0, -1};
    md.asd_basis[1].c = {0, 1, 0, 0, 1, 0};
    md.asd_basis[2].c = {0, 0, 1, -1, 0, 0};
    md.kahler = md.sd_basis[2];

    md.conj = solve_conjugation_intertwiner(md.gamma);
    return md;
}

const CliffordModel& clifford_model() {
    static const CliffordModel md = build_clifford_model();
    return md;
}

Mat4 gamma_vector(const Eigen::Vector4d& v) {
    const auto& md = clifford_model();
    Mat4 r = Mat4::Zero();
    for (int j = 0; j < 4; ++j) r += v(j) * md.gamma[j];
    return r;
}

Mat4 gamma_vector(const Eigen::Vector4cd& v) {
    const auto& md = clifford_model();
    Mat4 r = Mat4::Zero();
    for (int j = 0; j < 4; ++j) r += v(j) * md.gamma[j];
    return r;
}

Mat4 gamma_two_form(const TwoFormFibre& w) {
    const auto& md = clifford_model();
    Mat4 r = Mat4::Zero();
    for (int p = 0; p < 6; ++p) {
        auto [i, j] = TwoFormFibre::pairs[p];
        r += w.c[p] * (md.gamma[i] * md.gamma[j]);
    }
    return r;
}

Mat2 gamma_two_form_plus(const TwoFormFibre& w) {
    return gamma_two_form(w).block<2, 2>(0, 0);
}

Mat2 gamma_two_form_minus(const TwoFormFibre& w) {
    return gamma_two_form(w).block<2, 2>(2, 2);
}

DiracValue embed_plus(const WeylValue& v) {
    DiracValue r;
    r << v(0), v(1), 0, 0;
    return r;
}

DiracValue embed_minus(const WeylValue& v) {
    DiracValue r;
    r << 0, 0, v(0), v(1);
    return r;
}

TwoFormFibre sigma(const WeylValue& phi) {
    const auto& md = clifford_model();
    TwoFormFibre r;
    for (int k = 0; k < 3; ++k) {
        double sk = 0.25 * (phi.adjoint() * md.pauli[k] * phi)(0).real();
        for (int p = 0; p < 6; ++p) r.c[p] += J * sk * md.sd_basis[k].c[p];
    }
    return r;
}

std::pair<WeylValue, WeylValue> sigma_cubic_check(const WeylValue& phi) {
    DiracValue lhs4 = gamma_two_form(sigma(phi)) * embed_plus(phi);
    WeylValue lhs = lhs4.head<2>();
    WeylValue rhs = 0.5 * phi.squaredNorm() * phi;
    return {lhs, rhs};
}

TwoFormFibre sigma_frame_solve(const WeylValue& phi, const WeylValue& v) {
    // gamma(tau) phi = v on the plus chirality with tau = sum_k c_k i sd_k,
    // i.e. 2 sum_k c_k sigma_k phi = v. The Gram matrix of {sigma_k phi} is
    // |phi|^2 Id, so c_k = Re(phi^dag sigma_k v) / (2 |phi|^2).
    const auto& md = clifford_model();
    double n2 = phi.squaredNorm();
    if (n2 <= 0.0) throw std::invalid_argument("sigma_frame_solve: phi = 0");
    TwoFormFibre r;
    for (int k = 0; k < 3; ++k) {
        double ck = (phi.adjoint() * md.pauli[k] * v)(0).real() / (2.0 * n2);
        for (int p = 0; p < 6; ++p) r.c[p] += J * ck * md.sd_basis[k].c[p];
    }
    return r;
}

bool kernel_dichotomy_check(const TwoFormFibre& tau, const WeylValue& phi, double tol) {
    WeylValue v = gamma_two_form_plus(tau) * phi;
    double scale = 1.0 + std::sqrt(tau.norm_sq()) * phi.norm();
    if (v.norm() > tol * scale) return true;
    return std::sqrt(tau.norm_sq()) <= tol || phi.norm() <= tol;
}

DiracValue charge_conjugate_fibre(const DiracValue& phi) {
    return clifford_model().conj * phi.conjugate();
}

namespace {

TwoFormFibre random_two_form(Rng& rng) {
    TwoFormFibre w;
    for (auto& z : w.c) z = rng.cnormal();
    return w;
}

TwoFormFibre random_imag_sd(Rng& rng) {
    const auto& md = clifford_model();
    TwoFormFibre w;
    for (int k = 0; k < 3; ++k) {
        double ck = rng.normal();
        for (int p = 0; p < 6; ++p) w.c[p] += J * ck * md.sd_basis[k].c[p];
    }
    return w;
}

WeylValue random_weyl(Rng& rng) { return WeylValue(rng.cnormal(), rng.cnormal()); }

DiracValue random_dirac(Rng& rng) {
    return DiracValue(rng.cnormal(), rng.cnormal(), rng.cnormal(), rng.cnormal());
}

}  // namespace

IdentityReport identity_suite(std::uint64_t seed, int trials) {
    const auto& md = clifford_model();
    const double tol = 1e-12;
    Rng rng(seed);
    IdentityReport rep;
    rep.seed = seed;
    rep.trials = trials;

    double anti = 0, vol_split = 0, asd_plus = 0, fiber_lift = 0, contraction = 0;
    double sd_square = 0, cubic = 0, conj_comm = 0, conj_iso = 0, vol_chir = 0;

    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
            Mat4 ac = md.gamma[j] * md.gamma[k] + md.gamma[k] * md.gamma[j];
            if (j == k) ac += 2.0 * Mat4::Identity();
            anti = std::max(anti, ac.cwiseAbs().maxCoeff());
        }

    for (int t = 0; t < trials; ++t) {
        TwoFormFibre w = random_two_form(rng);
        auto [wp, wm] = selfdual_split(w);

        // dvol . omega_pm = -/+ omega_pm as endomorphisms of the spinor fibre.
        Mat4 dp = md.dvol * gamma_two_form(wp) + gamma_two_form(wp);
        Mat4 dm = md.dvol * gamma_two_form(wm) - gamma_two_form(wm);
        double sc = 1.0 + std::sqrt(w.norm_sq());
        vol_split = std::max(vol_split, std::max(dp.cwiseAbs().maxCoeff(), dm.cwiseAbs().maxCoeff()) / sc);

        // Anti-self-dual forms act trivially on the plus chirality (and dually).
        asd_plus = std::max(asd_plus, gamma_two_form(wm).block<2, 2>(0, 0).cwiseAbs().maxCoeff() / sc);
        asd_plus = std::max(asd_plus, gamma_two_form(wp).block<2, 2>(2, 2).cwiseAbs().maxCoeff() / sc);

        // Fiber element acts as -i on the plus chirality, +i on the minus.
        WeylValue ph = random_weyl(rng);
        DiracValue lift = embed_plus(ph);
        fiber_lift = std::max(fiber_lift,
                              (md.gamma_fiber * lift + J * lift).norm() / (1.0 + lift.norm()));
        DiracValue liftm = embed_minus(ph);
        fiber_lift = std::max(fiber_lift,
                              (md.gamma_fiber * liftm - J * liftm).norm() / (1.0 + liftm.norm()));
        vol_chir = std::max(vol_chir, (md.dvol * lift + lift).norm() / (1.0 + lift.norm()));
        vol_chir = std::max(vol_chir, (md.dvol * liftm - liftm).norm() / (1.0 + liftm.norm()));

        // sum_l gamma(e_l) gamma(contraction of F by e_l) = 2 gamma(F).
        Mat4 lhs = Mat4::Zero();
        for (int l = 0; l < 4; ++l) {
            Eigen::Vector4cd il = Eigen::Vector4cd::Zero();
            for (int p = 0; p < 6; ++p) {
                auto [i, j] = TwoFormFibre::pairs[p];
                if (i == l) il(j) += w.c[p];
                if (j == l) il(i) -= w.c[p];
            }
            lhs += md.gamma[l] * gamma_vector(il);
        }
        contraction = std::max(contraction,
                               (lhs - 2.0 * gamma_two_form(w)).cwiseAbs().maxCoeff() / sc);

        // gamma(tau)^2 = 2 |tau|^2 on the plus chirality for imaginary self-dual tau.
        TwoFormFibre tau = random_imag_sd(rng);
        Mat2 g = gamma_two_form_plus(tau);
        Mat2 sq = g * g - 2.0 * tau.norm_sq() * Mat2::Identity();
        sd_square = std::max(sd_square, sq.cwiseAbs().maxCoeff() / (1.0 + tau.norm_sq()));

        auto [cl, cr] = sigma_cubic_check(ph);
        cubic = std::max(cubic, (cl - cr).norm() / (1.0 + cr.norm()));

        // Conjugation: anti-linear, intertwines real Clifford multiplication, isometry.
        DiracValue d = random_dirac(rng);
        Eigen::Vector4d v;
        for (int i = 0; i < 4; ++i) v(i) = rng.normal();
        DiracValue a = gamma_vector(v) * charge_conjugate_fibre(d);
        DiracValue b = charge_conjugate_fibre(gamma_vector(v) * d);
        conj_comm = std::max(conj_comm, (a - b).norm() / (1.0 + b.norm()));
        conj_iso = std::max(conj_iso,
                            std::abs(charge_conjugate_fibre(d).norm() - d.norm()) / (1.0 + d.norm()));
    }

    Mat2 kc = gamma_two_form_plus(md.kahler * J);
    Mat2 kexp;
    kexp << 2, 0, 0, -2;
    double kahler_dev = (kc - kexp).cwiseAbs().maxCoeff();

    rep.checks.push_back(make_check("anticommutation", anti, tol));
    rep.checks.push_back(make_check("volume_form_on_split", vol_split, tol));
    rep.checks.push_back(make_check("volume_form_chirality", vol_chir, tol));
    rep.checks.push_back(make_check("asd_annihilates_plus", asd_plus, tol));
    rep.checks.push_back(make_check("fiber_element_on_lifts", fiber_lift, tol));
    rep.checks.push_back(make_check("contraction_trace", contraction, tol));
    rep.checks.push_back(make_check("sd_square_norm", sd_square, tol));
    rep.checks.push_back(make_check("sigma_cubic", cubic, tol));
    rep.checks.push_back(make_check("conjugation_intertwines", conj_comm, tol));
    rep.checks.push_back(make_check("conjugation_isometry", conj_iso, tol));
    rep.checks.push_back(make_check("kahler_normalization", kahler_dev, tol));
    return rep;
}

}
