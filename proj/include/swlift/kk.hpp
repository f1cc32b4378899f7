#pragma once

#include <cstdint>
#include <vector>

#include "swlift/seiberg_witten.hpp"

namespace swlift {

// Fibre radius of the circle bundle over the 4-torus: a positive constant or
// a positive scalar field pulled back from the base (empty field = constant).
struct RadiusProfile {
    double constant = 1.0;
    std::vector<double> field;

    bool is_constant() const { return field.empty(); }
    double at(std::int64_t s) const { return field.empty() ? constant : field[s]; }
};

// Total-space geometry: metric sum of the flat base metric and r^2 (dtheta+a)^2.
// The charge-q fibre momentum fixes the mass m = -q/r, nowhere zero.
struct KKGeometry {
    GaugeField A;
    RadiusProfile radius;
    Charge q;

    double mass_at(std::int64_t s) const { return -0.5 * q.doubled / radius.at(s); }
};

// Throws std::invalid_argument unless r > 0 everywhere and q != 0.
void validate_geometry(const KKGeometry& geom);

// Spinor in the single Fourier sector psi(x, theta) = exp(-iq theta) base(x);
// the fibre coordinate is never discretized. |psi| = |base| pointwise, so the
// stored base realizes the L2 isometry of the lift directly.
struct SectorSpinor {
    SpinorField base;  // full Dirac, 4 components
    Charge q;
};

// lift embeds any-chirality data into the full fibre; project the result of
// unlift to recover Weyl inputs.
SectorSpinor lift(const SpinorField& phi, Charge q);
SpinorField unlift(const SectorSpinor& psi);

// Covariant derivative in the orthonormal frame; direction 0..3 picks the
// horizontal lift of a base axis, 4 the unit fibre direction K/r. Constant
// radius only. The spin-connection terms are assembled from the curvature of
// the bundle: direction mu gets (r/4) sum_nu f_{mu nu} gamma_fibre gamma_nu,
// the fibre direction gets -iq/r plus (r/4) gamma(f), with f the real
// curvature two-form (F_A = i f).
SectorSpinor nabla_Y(const SectorSpinor& psi, const KKGeometry& geom, int direction);

// Dirac operator, two independent constructions.
// Frame path: sum of gamma(frame) nabla_Y over the five directions; accepts
// full sector spinors; constant radius only.
SectorSpinor dirac_Y_frame(const SectorSpinor& psi, const KKGeometry& geom);
// Reduced path: conjugation of D_X + m_r - (1/(8 m_r)) gamma(2q F_A^+) by the
// lift; requires a positive-chirality base; supports varying radius.
SectorSpinor dirac_Y_reduced(const SectorSpinor& psi, const KKGeometry& geom);

// D^Y psi + (1/(16m))|psi|^2 psi - m psi + (1/(8m)) gamma(mu) psi, the mass
// pointwise m = -q/r(x). Constant radius evaluates through the frame operator
// (any chirality); varying radius through the reduced one (plus lifts only).
SectorSpinor cubic_residual(const SectorSpinor& psi, const KKGeometry& geom,
                            const TwoFormField& mu);

// S[psi] = <psi, D psi> - m |psi|^2 + (1/(32m)) integral |psi|^4, fibre-volume
// normalized like the lift. Gradient for the real L2 pairing; equals twice the
// cubic residual at mu = 0. Constant radius only.
double gross_neveu_action(const SectorSpinor& psi, const KKGeometry& geom);
SectorSpinor action_gradient(const SectorSpinor& psi, const KKGeometry& geom);

// Exact algebraic split of the cubic residual of a lifted configuration:
//   cubic_residual(lift phi) = lift(dirac_part) - (1/(8m)) gamma(curvature_part) lift(phi)
// identity_dev is the relative deviation; the recovery deviations measure the
// converse reconstruction of both residual parts from the cubic residual alone,
// at sites where |phi| > tau_phi_rel * max|phi|.
struct DecompositionReport {
    double identity_dev = 0;
    double dirac_recovery_dev = 0;
    double curvature_recovery_dev = 0;
    std::int64_t sites_tested = 0;
};
DecompositionReport residual_decomposition_check(const SWConfiguration& cfg,
                                                 const KKGeometry& geom,
                                                 double tau_phi_rel = 1e-6);

}
