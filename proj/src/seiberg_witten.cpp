#include "swlift/seiberg_witten.hpp"

#include <cmath>
#include <stdexcept>

namespace swlift {

namespace {
const complexd J{0.0, 1.0};

WeylValue plus_at(const SpinorField& f, std::int64_t s) {
    return WeylValue(f.v[s * 2], f.v[s * 2 + 1]);
}
}

void check_configuration(const SWConfiguration& cfg) {
    if (cfg.q.doubled == 0) throw std::invalid_argument("SWConfiguration: q must be nonzero");
    if (cfg.phi.chirality != Chirality::plus)
        throw std::invalid_argument("SWConfiguration: phi must have positive chirality");
    if (!(cfg.A.grid == cfg.phi.grid) || !(cfg.A.grid == cfg.mu.grid))
        throw std::invalid_argument("SWConfiguration: grid mismatch");

    double scale = 0, bad = 0;
    for (std::int64_t s = 0; s < cfg.A.grid.volume(); ++s) {
        TwoFormFibre f = cfg.mu.at(s);
        auto [sd, asd] = selfdual_split(f);
        for (int p = 0; p < 6; ++p) {
            scale = std::max(scale, std::abs(f.c[p]));
            bad = std::max({bad, std::abs(asd.c[p]), std::abs(f.c[p].real())});
        }
    }
    if (bad > 1e-12 * (1.0 + scale))
        throw std::invalid_argument("SWConfiguration: mu is not imaginary self-dual");
}

TwoFormField sigma_field(const SpinorField& phi) {
    TwoFormField out(phi.grid);
    for (std::int64_t s = 0; s < phi.grid.volume(); ++s) out.set(s, sigma(plus_at(phi, s)));
    return out;
}

TwoFormField self_dual_part(const TwoFormField& F) {
    TwoFormField out(F.grid);
    for (std::int64_t s = 0; s < F.grid.volume(); ++s) out.set(s, selfdual_split(F.at(s)).first);
    return out;
}

TwoFormField manufactured_mu(const GaugeField& A, const SpinorField& phi, Charge q) {
    TwoFormField mu = self_dual_part(curvature(A));
    double twoq = q.doubled;
    for (std::int64_t s = 0; s < A.grid.volume(); ++s) {
        TwoFormFibre f = mu.at(s) * complexd(twoq, 0.0) - sigma(plus_at(phi, s));
        mu.set(s, f);
    }
    return mu;
}

SWResidual sw_residual(const SWConfiguration& cfg) {
    check_configuration(cfg);
    SWResidual r{dirac4(cfg.A, cfg.q, cfg.phi), self_dual_part(curvature(cfg.A))};
    double twoq = cfg.q.doubled;
    for (std::int64_t s = 0; s < cfg.A.grid.volume(); ++s) {
        TwoFormFibre f =
            r.curvature_part.at(s) * complexd(twoq, 0.0) - sigma(plus_at(cfg.phi, s)) - cfg.mu.at(s);
        r.curvature_part.set(s, f);
    }
    return r;
}

double residual_norm_sq(const SWResidual& r) {
    return l2_norm_sq(r.dirac_part) + l2_norm_sq(r.curvature_part);
}

SWConfiguration gauge_transform(const SWConfiguration& cfg, const GaugeTransform& h) {
    const Grid4& g = cfg.A.grid;
    if (!h.chi.empty() && std::int64_t(h.chi.size()) != g.volume())
        throw std::invalid_argument("gauge_transform: chi size mismatch");

    SWConfiguration out = cfg;
    for (int m = 0; m < 4; ++m) out.A.holonomy[m] += 2.0 * h.winding[m];
    if (!h.chi.empty()) {
        for (int m = 0; m < 4; ++m) {
            auto dchi = spectral_partial_real(g, h.chi, m);
            for (std::int64_t s = 0; s < g.volume(); ++s) out.A.a[m][s] += 2.0 * dchi[s];
        }
    }

    // exp(-2qi(w.x + chi)); 2q w is integral so the winding phase is periodic.
    for (std::int64_t s = 0; s < g.volume(); ++s) {
        auto c = g.coords(s);
        double xi = h.chi.empty() ? 0.0 : h.chi[s];
        for (int m = 0; m < 4; ++m) xi += h.winding[m] * g.coordinate(c[m]);
        complexd phase = std::exp(-J * double(cfg.q.doubled) * xi);
        out.phi.v[s * 2] *= phase;
        out.phi.v[s * 2 + 1] *= phase;
    }
    return out;
}

SWConfiguration charge_conjugate_config(const SWConfiguration& cfg) {
    SWConfiguration out = cfg;
    out.q.doubled = -cfg.q.doubled;
    for (std::int64_t s = 0; s < cfg.A.grid.volume(); ++s) {
        DiracValue d = charge_conjugate_fibre(embed_plus(plus_at(cfg.phi, s)));
        out.phi.v[s * 2] = d(0);
        out.phi.v[s * 2 + 1] = d(1);
    }
    for (auto& z : out.mu.v) z = -z;
    return out;
}

}
