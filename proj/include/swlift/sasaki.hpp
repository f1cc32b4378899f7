#pragma once

#include "swlift/clifford.hpp"

namespace swlift {

// Kaehler-Einstein model data over a single fibre: Einstein constant lambda,
// perturbation scale t, and the choice of spin-c structure. The canonical
// structure admits the solution for t < -lambda, its conjugate for t > lambda.
enum class KEStructure { canonical, conjugate };

struct KEParameters {
    double lambda = 0;
    double t = 0;
    KEStructure structure = KEStructure::canonical;
};

// Constant solution of the curvature equation gamma(F+) = gamma(sigma(phi0))
// + gamma(mu) on the positive Weyl fibre, mu = i t omega:
//   canonical:  phi0 = (2 sqrt(-lambda-t), 0),  gamma(F+) = -2 lambda diag(1,-1)
//   conjugate:  phi0 = (0, 2 sqrt(t-lambda)),   gamma(F+) = +2 lambda diag(1,-1)
struct KESolution {
    WeylValue phi0;
    Mat2 gamma_F;
    Mat2 gamma_mu;
};
KESolution ke_solution(const KEParameters& p);

// Lifted spinor data: mass m = -+ |lambda|/4, |psi|^2 = 4(-lambda -+ t), and
// the Dirac eigenvalue nu, computed from the sign case table and re-derived
// from -(1/16m)|psi|^2 + m - (1/8m)(gamma(mu) eigenvalue); the two must agree,
// and both reduce to the t-independent value lambda/(4m) + m.
struct LiftedEigenvalue {
    double m = 0;
    double norm_sq = 0;
    double nu = 0;
};
LiftedEigenvalue lifted_eigenvalue(const KEParameters& p);

// One row of the eta-Einstein table for the circle bundle of radius 2/|lambda|
// over an Einstein base with Ric = lambda g: Ricci splits as
// alpha_g g + alpha_eta eta (x) eta with alpha_g + alpha_eta = 4. The spinor
// columns use the t-offset making |psi|^2 = 16 in both structures.
struct SasakiReport {
    double lambda = 0;
    double r = 0;
    double m = 0;
    double norm_sq = 0;
    double nu_plus = 0;
    double nu_minus = 0;
    double alpha_g = 0;
    double alpha_eta = 0;
    double scal = 0;
    double gap = 0;
};
SasakiReport sasaki_curvature_report(double lambda);

// nu^2 - (5/16) scal, nonnegative, zero exactly at lambda = 6.
double friedrich_gap(double lambda);

}
