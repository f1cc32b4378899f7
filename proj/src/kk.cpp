#include "swlift/kk.hpp"

#include <cmath>
#include <stdexcept>

namespace swlift {

namespace {
const complexd J{0.0, 1.0};

DiracValue full_at(const SpinorField& f, std::int64_t s) {
    DiracValue d;
    for (int c = 0; c < 4; ++c) d(c) = f.v[s * 4 + c];
    return d;
}

void set_full(SpinorField& f, std::int64_t s, const DiracValue& d) {
    for (int c = 0; c < 4; ++c) f.v[s * 4 + c] = d(c);
}

// Real curvature two-form f with F_A = i f.
TwoFormFibre real_curvature_fibre(const TwoFormField& F, std::int64_t s) {
    TwoFormFibre f = F.at(s);
    for (auto& c : f.c) c = -J * c;
    return f;
}

double max_abs(const cvector& v) {
    double m = 0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

void require_plus_lift(const SpinorField& base) {
    double scale = max_abs(base.v), bad = 0;
    for (std::int64_t s = 0; s < base.grid.volume(); ++s)
        bad = std::max({bad, std::abs(base.v[s * 4 + 2]), std::abs(base.v[s * 4 + 3])});
    if (bad > 1e-12 * (1.0 + scale))
        throw std::invalid_argument("reduced Dirac operator needs a positive-chirality lift");
}
}

void validate_geometry(const KKGeometry& geom) {
    if (geom.q.doubled == 0) throw std::invalid_argument("KKGeometry: q must be nonzero");
    if (geom.radius.is_constant()) {
        if (!(geom.radius.constant > 0))
            throw std::invalid_argument("KKGeometry: radius must be positive");
    } else {
        if (std::int64_t(geom.radius.field.size()) != geom.A.grid.volume())
            throw std::invalid_argument("KKGeometry: radius field size mismatch");
        for (double r : geom.radius.field)
            if (!(r > 0)) throw std::invalid_argument("KKGeometry: radius must be positive");
    }
}

SectorSpinor lift(const SpinorField& phi, Charge q) {
    return {phi.chirality == Chirality::full ? phi : embed_full(phi), q};
}

SpinorField unlift(const SectorSpinor& psi) { return psi.base; }

SectorSpinor nabla_Y(const SectorSpinor& psi, const KKGeometry& geom, int direction) {
    validate_geometry(geom);
    if (!geom.radius.is_constant())
        throw std::invalid_argument("nabla_Y supports constant radius only");
    if (direction < 0 || direction > 4) throw std::invalid_argument("nabla_Y: bad direction");
    if (!(psi.base.grid == geom.A.grid) || psi.base.chirality != Chirality::full ||
        psi.q.doubled != geom.q.doubled)
        throw std::invalid_argument("nabla_Y: sector spinor mismatch");

    const Grid4& g = psi.base.grid;
    const CliffordModel& cm = clifford_model();
    const double r = geom.radius.constant;
    const double q = psi.q.value();
    TwoFormField F = curvature(geom.A);

    SectorSpinor out{SpinorField(g, Chirality::full), psi.q};
    if (direction < 4) {
        SpinorField d = spectral_partial(psi.base, direction);
        for (std::int64_t s = 0; s < g.volume(); ++s) {
            TwoFormFibre f = real_curvature_fibre(F, s);
            Mat4 omega = Mat4::Zero();
            for (int nu = 0; nu < 4; ++nu) {
                if (nu == direction) continue;
                int lo = std::min(direction, nu), hi = std::max(direction, nu);
                int p = 0;
                while (TwoFormFibre::pairs[p] != std::pair{lo, hi}) ++p;
                complexd fmn = (direction < nu ? 1.0 : -1.0) * f.c[p];
                omega += (r / 4.0) * fmn * (cm.gamma_fiber * cm.gamma[nu]);
            }
            complexd coup = J * q * (geom.A.a[direction][s] + geom.A.holonomy[direction]);
            set_full(out.base, s, full_at(d, s) + coup * full_at(psi.base, s) +
                                      omega * full_at(psi.base, s));
        }
    } else {
        for (std::int64_t s = 0; s < g.volume(); ++s) {
            TwoFormFibre f = real_curvature_fibre(F, s);
            DiracValue b = full_at(psi.base, s);
            set_full(out.base, s, (-J * q / r) * b + (r / 4.0) * (gamma_two_form(f) * b));
        }
    }
    return out;
}

SectorSpinor dirac_Y_frame(const SectorSpinor& psi, const KKGeometry& geom) {
    const CliffordModel& cm = clifford_model();
    SectorSpinor out{SpinorField(psi.base.grid, Chirality::full), psi.q};
    for (int dir = 0; dir < 5; ++dir) {
        SectorSpinor n = nabla_Y(psi, geom, dir);
        const Mat4& gam = dir < 4 ? cm.gamma[dir] : cm.gamma_fiber;
        for (std::int64_t s = 0; s < psi.base.grid.volume(); ++s)
            set_full(out.base, s, full_at(out.base, s) + gam * full_at(n.base, s));
    }
    return out;
}

SectorSpinor dirac_Y_reduced(const SectorSpinor& psi, const KKGeometry& geom) {
    validate_geometry(geom);
    if (!(psi.base.grid == geom.A.grid) || psi.q.doubled != geom.q.doubled)
        throw std::invalid_argument("dirac_Y_reduced: sector mismatch");
    require_plus_lift(psi.base);

    const Grid4& g = psi.base.grid;
    SpinorField phi = project_chirality(psi.base, Chirality::plus);
    SpinorField dx = dirac4(geom.A, psi.q, phi);
    TwoFormField Fp = self_dual_part(curvature(geom.A));
    const double twoq = psi.q.doubled;

    SectorSpinor out{SpinorField(g, Chirality::full), psi.q};
    for (std::int64_t s = 0; s < g.volume(); ++s) {
        double m = geom.mass_at(s);
        WeylValue w(phi.v[s * 2], phi.v[s * 2 + 1]);
        WeylValue plus =
            m * w - (1.0 / (8.0 * m)) * (gamma_two_form_plus(Fp.at(s) * complexd(twoq, 0)) * w);
        out.base.v[s * 4] = plus(0);
        out.base.v[s * 4 + 1] = plus(1);
        out.base.v[s * 4 + 2] = dx.v[s * 2];
        out.base.v[s * 4 + 3] = dx.v[s * 2 + 1];
    }
    return out;
}

SectorSpinor cubic_residual(const SectorSpinor& psi, const KKGeometry& geom,
                            const TwoFormField& mu) {
    validate_geometry(geom);
    if (!(mu.grid == psi.base.grid))
        throw std::invalid_argument("cubic_residual: grid mismatch");
    SectorSpinor out =
        geom.radius.is_constant() ? dirac_Y_frame(psi, geom) : dirac_Y_reduced(psi, geom);
    for (std::int64_t s = 0; s < psi.base.grid.volume(); ++s) {
        double m = geom.mass_at(s);
        DiracValue b = full_at(psi.base, s);
        double nsq = b.squaredNorm();
        DiracValue v = full_at(out.base, s) + (nsq / (16.0 * m) - m) * b +
                       (1.0 / (8.0 * m)) * (gamma_two_form(mu.at(s)) * b);
        set_full(out.base, s, v);
    }
    return out;
}

double gross_neveu_action(const SectorSpinor& psi, const KKGeometry& geom) {
    validate_geometry(geom);
    if (!geom.radius.is_constant())
        throw std::invalid_argument("gross_neveu_action: constant radius only");
    const double m = geom.mass_at(0);
    SectorSpinor d = dirac_Y_frame(psi, geom);
    double quartic = 0;
    for (std::int64_t s = 0; s < psi.base.grid.volume(); ++s) {
        double nsq = full_at(psi.base, s).squaredNorm();
        quartic += nsq * nsq;
    }
    quartic *= psi.base.grid.cell_volume();
    return l2_inner(psi.base, d.base).real() - m * l2_norm_sq(psi.base) +
           quartic / (32.0 * m);
}

SectorSpinor action_gradient(const SectorSpinor& psi, const KKGeometry& geom) {
    if (!geom.radius.is_constant())
        throw std::invalid_argument("action_gradient: constant radius only");
    SectorSpinor out = cubic_residual(psi, geom, TwoFormField(psi.base.grid));
    for (auto& z : out.base.v) z *= 2.0;
    return out;
}

DecompositionReport residual_decomposition_check(const SWConfiguration& cfg,
                                                 const KKGeometry& geom,
                                                 double tau_phi_rel) {
    if (geom.q.doubled != cfg.q.doubled || !(geom.A.grid == cfg.A.grid))
        throw std::invalid_argument("residual_decomposition_check: inconsistent geometry");
    for (int mdir = 0; mdir < 4; ++mdir)
        if (geom.A.holonomy[mdir] != cfg.A.holonomy[mdir] || geom.A.a[mdir] != cfg.A.a[mdir])
            throw std::invalid_argument("residual_decomposition_check: inconsistent geometry");

    const Grid4& g = cfg.A.grid;
    SectorSpinor psi = lift(cfg.phi, cfg.q);
    SectorSpinor cres = cubic_residual(psi, geom, cfg.mu);
    SWResidual sw = sw_residual(cfg);

    DecompositionReport rep;
    double pred_scale = 0, id_dev = 0;
    for (std::int64_t s = 0; s < g.volume(); ++s) {
        double m = geom.mass_at(s);
        WeylValue phi(cfg.phi.v[s * 2], cfg.phi.v[s * 2 + 1]);
        WeylValue plus = -(1.0 / (8.0 * m)) * (gamma_two_form_plus(sw.curvature_part.at(s)) * phi);
        DiracValue pred(plus(0), plus(1), sw.dirac_part.v[s * 2], sw.dirac_part.v[s * 2 + 1]);
        DiracValue got = full_at(cres.base, s);
        id_dev = std::max(id_dev, (got - pred).cwiseAbs().maxCoeff());
        pred_scale = std::max(pred_scale, pred.cwiseAbs().maxCoeff());
    }
    rep.identity_dev = id_dev / (1.0 + pred_scale);

    // Converse: rebuild both residual parts from the cubic residual alone.
    double phimax = 0;
    for (std::int64_t s = 0; s < g.volume(); ++s)
        phimax = std::max(phimax, WeylValue(cfg.phi.v[s * 2], cfg.phi.v[s * 2 + 1]).norm());
    double tau = tau_phi_rel * phimax;
    double dscale = 1.0 + max_abs(sw.dirac_part.v), cscale = 1.0 + max_abs(sw.curvature_part.v);
    const CliffordModel& cm = clifford_model();
    for (std::int64_t s = 0; s < g.volume(); ++s) {
        WeylValue phi(cfg.phi.v[s * 2], cfg.phi.v[s * 2 + 1]);
        if (phi.norm() <= tau) continue;
        ++rep.sites_tested;
        DiracValue c = full_at(cres.base, s);
        rep.dirac_recovery_dev =
            std::max({rep.dirac_recovery_dev, std::abs(c(2) - sw.dirac_part.v[s * 2]) / dscale,
                      std::abs(c(3) - sw.dirac_part.v[s * 2 + 1]) / dscale});

        double m = geom.mass_at(s);
        WeylValue v = -8.0 * m * WeylValue(c(0), c(1));
        TwoFormFibre rec{};
        for (int k = 0; k < 3; ++k) {
            double ck = (phi.dot(cm.pauli[k] * v)).real() / (2.0 * phi.squaredNorm());
            for (int p = 0; p < 6; ++p) rec.c[p] += ck * J * cm.sd_basis[k].c[p];
        }
        TwoFormFibre truth = sw.curvature_part.at(s);
        for (int p = 0; p < 6; ++p)
            rep.curvature_recovery_dev =
                std::max(rep.curvature_recovery_dev, std::abs(rec.c[p] - truth.c[p]) / cscale);
    }
    return rep;
}

}
