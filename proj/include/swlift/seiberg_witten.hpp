#pragma once

#include <array>
#include <vector>

#include "swlift/fields.hpp"

namespace swlift {

// Configuration of the perturbed abelian monopole system on the 4-torus.
// phi has positive chirality; q is the spinor charge (2q integral, q != 0);
// mu is a fixed imaginary self-dual perturbation two-form.
struct SWConfiguration {
    GaugeField A;
    SpinorField phi;
    Charge q;
    TwoFormField mu;
};

// Residual of the system
//   dirac_part     = D_A phi                      (negative chirality)
//   curvature_part = 2q F_A^+ - sigma(phi) - mu   (imaginary self-dual)
// Both vanish exactly when the configuration solves the equations.
struct SWResidual {
    SpinorField dirac_part;
    TwoFormField curvature_part;
};

// Throws std::invalid_argument on grid mismatch, q = 0, wrong chirality, or a
// mu that fails imaginary self-duality beyond 1e-12 relative.
void check_configuration(const SWConfiguration& cfg);

SWResidual sw_residual(const SWConfiguration& cfg);
double residual_norm_sq(const SWResidual& r);

// Pointwise sigma(phi) of the positive-chirality field, imaginary self-dual.
TwoFormField sigma_field(const SpinorField& phi);
TwoFormField self_dual_part(const TwoFormField& F);

// mu making curvature_part vanish identically: 2q F_A^+ - sigma(phi).
TwoFormField manufactured_mu(const GaugeField& A, const SpinorField& phi, Charge q);

// Gauge transformation by h = exp(i(w.x + chi)): integral winding w plus a
// band-limited single-valued phase chi (empty vector means chi = 0).
struct GaugeTransform {
    std::array<int, 4> winding{};
    std::vector<double> chi;
};

// Acts by a += 2 d(chi), holonomy += 2w, phi *= exp(-2qi(w.x + chi)).
// The spinor phase carries the charge so that the residual transforms
// covariantly for every q: dirac_part picks up the same phase pointwise,
// curvature_part is untouched, both L2 norms are invariant.
SWConfiguration gauge_transform(const SWConfiguration& cfg, const GaugeTransform& h);

// Charge conjugation: q -> -q, phi -> fibrewise conjugation, mu -> -mu, with
// the base potential kept so the composite curvature 2q F_A flips sign exactly
// once. dirac_part maps to its fibre conjugate, curvature_part to its negative;
// both norms are preserved. Applying it twice returns the configuration up to
// the constant gauge factor -1 on phi (fibre conjugation squares to -1).
SWConfiguration charge_conjugate_config(const SWConfiguration& cfg);

}
