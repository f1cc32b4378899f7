#include "swlift/sasaki.hpp"

#include "swlift/ricci.hpp"

#include <cmath>
#include <stdexcept>

namespace swlift {

namespace {

void validate(const KEParameters& p) {
    if (p.lambda == 0.0) throw std::invalid_argument("Einstein constant must be nonzero");
    if (p.structure == KEStructure::canonical) {
        if (!(p.t < -p.lambda)) throw std::invalid_argument("canonical structure needs t < -lambda");
    } else {
        if (!(p.t > p.lambda)) throw std::invalid_argument("conjugate structure needs t > lambda");
    }
}

Mat2 diag_pm(double a) {
    Mat2 m = Mat2::Zero();
    m(0, 0) = a;
    m(1, 1) = -a;
    return m;
}

}  // namespace

KESolution ke_solution(const KEParameters& p) {
    validate(p);
    KESolution s;
    s.gamma_mu = diag_pm(2.0 * p.t);
    if (p.structure == KEStructure::canonical) {
        s.phi0 = WeylValue(2.0 * std::sqrt(-p.lambda - p.t), 0.0);
        s.gamma_F = diag_pm(-2.0 * p.lambda);
    } else {
        s.phi0 = WeylValue(0.0, 2.0 * std::sqrt(p.t - p.lambda));
        s.gamma_F = diag_pm(2.0 * p.lambda);
    }
    return s;
}

LiftedEigenvalue lifted_eigenvalue(const KEParameters& p) {
    validate(p);
    const bool canonical = p.structure == KEStructure::canonical;
    LiftedEigenvalue e;
    e.m = (canonical ? -0.25 : 0.25) * std::abs(p.lambda);
    e.norm_sq = 4.0 * (-p.lambda + (canonical ? -p.t : p.t));

    const double quarter = 0.25 * std::abs(p.lambda);
    double by_case;
    if (canonical) {
        by_case = p.lambda < 0 ? 1.0 - quarter : -1.0 - quarter;
    } else {
        by_case = p.lambda > 0 ? 1.0 + quarter : -1.0 + quarter;
    }

    // gamma(mu) phi0 = +-2t phi0; the potential and mu terms must conspire to
    // cancel every t-dependence.
    const double g_mu = canonical ? 2.0 * p.t : -2.0 * p.t;
    const double generic = -e.norm_sq / (16.0 * e.m) + e.m - g_mu / (8.0 * e.m);
    if (std::abs(generic - by_case) > 1e-12 * (1.0 + std::abs(by_case)))
        throw std::logic_error("eigenvalue case table disagrees with the generic formula");

    e.nu = by_case;
    return e;
}

SasakiReport sasaki_curvature_report(double lambda) {
    if (lambda == 0.0) throw std::invalid_argument("Einstein constant must be nonzero");

    SasakiReport rep;
    rep.lambda = lambda;
    rep.r = 2.0 / std::abs(lambda);

    const CliffordModel& cm = clifford_model();
    TwoFormFibre F;
    for (int p = 0; p < 6; ++p) F.c[p] = complexd(0.0, -lambda) * cm.sd_basis[2].c[p];
    const Eigen::Matrix<double, 5, 5> ric =
        ricci_kk(F, rep.r, lambda * Eigen::Matrix4d::Identity());

    rep.alpha_g = ric(0, 0);
    rep.alpha_eta = ric(4, 4) - rep.alpha_g;
    rep.scal = 4.0 * rep.alpha_g + ric(4, 4);

    const double offset = 4.0;  // makes |psi|^2 = 16 in both structures
    const LiftedEigenvalue can =
        lifted_eigenvalue({lambda, -lambda - offset, KEStructure::canonical});
    const LiftedEigenvalue con =
        lifted_eigenvalue({lambda, lambda + offset, KEStructure::conjugate});
    rep.m = can.m;
    rep.norm_sq = 4.0 * offset;
    rep.nu_plus = std::max(can.nu, con.nu);
    rep.nu_minus = std::min(can.nu, con.nu);
    rep.gap = friedrich_gap(lambda);
    return rep;
}

double friedrich_gap(double lambda) {
    const double q = 1.0 + 0.25 * lambda;
    return q * q - 1.25 * (lambda - 1.0);
}

}  // namespace swlift
