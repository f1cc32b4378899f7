#include "swlift/solver.hpp"

#include "swlift/spectral.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace swlift {

namespace {

constexpr complexd J{0.0, 1.0};

struct Layout {
    std::int64_t vol = 0;
    double wd = 0;  // sqrt(cell volume), dirac entries
    double wc = 0;  // sqrt(2 cell volume), self-dual coefficients

    explicit Layout(const Grid4& g) : vol(g.volume()) {
        const double cv = g.cell_volume();
        wd = std::sqrt(cv);
        wc = std::sqrt(2.0 * cv);
    }
    std::int64_t params() const { return 4 + 8 * vol; }
    std::int64_t residuals() const { return 7 * vol; }
    std::int64_t a_at(int mu, std::int64_t s) const { return 4 + mu * vol + s; }
    std::int64_t phi_at(std::int64_t s, int c, int reim) const {
        return 4 + 4 * vol + 4 * s + 2 * c + reim;
    }
    std::int64_t rd_at(std::int64_t s, int c, int reim) const { return 4 * s + 2 * c + reim; }
    std::int64_t rc_at(std::int64_t s, int k) const { return 4 * vol + 3 * s + k; }
};

void project_zero_mean(std::vector<double>& f) {
    double mean = 0;
    for (double x : f) mean += x;
    mean /= double(f.size());
    for (double& x : f) x -= mean;
}

WeylValue weyl_at(const SpinorField& f, std::int64_t s) {
    return WeylValue(f.v[2 * s], f.v[2 * s + 1]);
}

// Coefficients t_k of an imaginary self-dual fibre in the basis i*sd_basis[k];
// the real part is roundoff dust by construction and is dropped.
std::array<double, 3> sd_coefficients(const CliffordModel& cm, const TwoFormFibre& f) {
    std::array<double, 3> t{};
    for (int k = 0; k < 3; ++k) {
        double acc = 0;
        for (int p = 0; p < 6; ++p) acc += cm.sd_basis[k].c[p].real() * f.c[p].imag();
        t[k] = 0.5 * acc;
    }
    return t;
}

std::vector<double> unpack_a(const Layout& lay, const std::vector<double>& x, int mu) {
    std::vector<double> a(lay.vol);
    for (std::int64_t s = 0; s < lay.vol; ++s) a[s] = x[lay.a_at(mu, s)];
    return a;
}

SpinorField unpack_phi(const Grid4& g, const Layout& lay, const std::vector<double>& x) {
    SpinorField f(g, Chirality::plus);
    for (std::int64_t s = 0; s < lay.vol; ++s)
        for (int c = 0; c < 2; ++c)
            f.v[2 * s + c] =
                complexd(x[lay.phi_at(s, c, 0)], x[lay.phi_at(s, c, 1)]);
    return f;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

// Jacobi preconditioner, diagonal in Fourier space: the phi block sees the
// squared shifted wavenumber of the linearized Dirac operator, the a block the
// curvature symbol; both are positive approximations, exactness not required.
struct Preconditioner {
    Grid4 grid;
    std::vector<double> inv_phi;  // per mode
    std::vector<double> inv_a;    // per mode
    double inv_h = 1.0;

    Preconditioner(const SWConfiguration& cfg, double lambda) : grid(cfg.A.grid) {
        const Layout lay(grid);
        const double cv = grid.cell_volume();
        const double qv = cfg.q.value();
        const double q2 = double(cfg.q.doubled);

        double mean_nsq = 0;
        for (std::int64_t s = 0; s < lay.vol; ++s) mean_nsq += weyl_at(cfg.phi, s).squaredNorm();
        mean_nsq /= double(lay.vol);

        std::array<double, 4> shift{};
        for (int mu = 0; mu < 4; ++mu) {
            double mean_a = 0;
            for (double v : cfg.A.a[mu]) mean_a += v;
            shift[mu] = qv * (cfg.A.holonomy[mu] + mean_a / double(lay.vol));
        }

        inv_phi.resize(lay.vol);
        inv_a.resize(lay.vol);
        for (std::int64_t s = 0; s < lay.vol; ++s) {
            const auto idx = grid.coords(s);
            double kq2 = 0, k2 = 0;
            for (int mu = 0; mu < 4; ++mu) {
                const double f = grid.frequency(idx[mu]);
                kq2 += (f + shift[mu]) * (f + shift[mu]);
                k2 += f * f;
            }
            inv_phi[s] = 1.0 / (cv * (kq2 + 0.5 * mean_nsq) + lambda);
            inv_a[s] = 1.0 / (cv * (0.5 * q2 * q2 * k2 + qv * qv * mean_nsq) + lambda);
        }
        inv_h = 1.0 / (cv * double(lay.vol) * qv * qv * mean_nsq + lambda);
    }

    std::vector<double> apply(const std::vector<double>& z) const {
        const Layout lay(grid);
        std::vector<double> out(z.size());
        for (int mu = 0; mu < 4; ++mu) out[mu] = inv_h * z[mu];

        cvector a(lay.vol * 4);
        for (std::int64_t s = 0; s < lay.vol; ++s)
            for (int mu = 0; mu < 4; ++mu) a[4 * s + mu] = z[lay.a_at(mu, s)];
        spectral::forward(grid, a, 4);
        for (std::int64_t s = 0; s < lay.vol; ++s)
            for (int mu = 0; mu < 4; ++mu) a[4 * s + mu] *= inv_a[s];
        spectral::inverse(grid, a, 4);
        for (std::int64_t s = 0; s < lay.vol; ++s)
            for (int mu = 0; mu < 4; ++mu) out[lay.a_at(mu, s)] = a[4 * s + mu].real();

        cvector phi(lay.vol * 2);
        for (std::int64_t s = 0; s < lay.vol; ++s)
            for (int c = 0; c < 2; ++c)
                phi[2 * s + c] = complexd(z[lay.phi_at(s, c, 0)], z[lay.phi_at(s, c, 1)]);
        spectral::forward(grid, phi, 2);
        for (std::int64_t s = 0; s < lay.vol; ++s)
            for (int c = 0; c < 2; ++c) phi[2 * s + c] *= inv_phi[s];
        spectral::inverse(grid, phi, 2);
        for (std::int64_t s = 0; s < lay.vol; ++s)
            for (int c = 0; c < 2; ++c) {
                out[lay.phi_at(s, c, 0)] = phi[2 * s + c].real();
                out[lay.phi_at(s, c, 1)] = phi[2 * s + c].imag();
            }
        return out;
    }
};

}  // namespace

std::string to_string(TerminationReason r) {
    switch (r) {
        case TerminationReason::tolerance: return "tolerance";
        case TerminationReason::max_iterations: return "max-iterations";
        case TerminationReason::stagnation: return "stagnation";
        case TerminationReason::divergence: return "divergence";
    }
    return "unknown";
}

void ConvergenceLog::write_csv(std::ostream& out) const {
    out << "iteration,objective,step_norm,damping\n";
    out << std::setprecision(17);
    for (const Row& r : rows)
        out << r.iteration << ',' << r.objective << ',' << r.step_norm << ',' << r.damping
            << '\n';
}

std::size_t parameter_count(const SWConfiguration& cfg) {
    return std::size_t(Layout(cfg.A.grid).params());
}

SWConfiguration apply_step(const SWConfiguration& cfg, const std::vector<double>& dx) {
    const Layout lay(cfg.A.grid);
    if (std::int64_t(dx.size()) != lay.params())
        throw std::invalid_argument("step size does not match the parameter layout");

    SWConfiguration out = cfg;
    for (int mu = 0; mu < 4; ++mu) {
        out.A.holonomy[mu] += dx[mu];
        std::vector<double> da = unpack_a(lay, dx, mu);
        project_zero_mean(da);
        for (std::int64_t s = 0; s < lay.vol; ++s) out.A.a[mu][s] += da[s];
    }
    for (std::int64_t s = 0; s < lay.vol; ++s)
        for (int c = 0; c < 2; ++c)
            out.phi.v[2 * s + c] +=
                complexd(dx[lay.phi_at(s, c, 0)], dx[lay.phi_at(s, c, 1)]);
    return out;
}

std::vector<double> residual_vector(const SWConfiguration& cfg) {
    const Layout lay(cfg.A.grid);
    const CliffordModel& cm = clifford_model();
    const SWResidual r = sw_residual(cfg);

    std::vector<double> y(lay.residuals());
    for (std::int64_t s = 0; s < lay.vol; ++s) {
        for (int c = 0; c < 2; ++c) {
            const complexd z = lay.wd * r.dirac_part.v[2 * s + c];
            y[lay.rd_at(s, c, 0)] = z.real();
            y[lay.rd_at(s, c, 1)] = z.imag();
        }
        const std::array<double, 3> t = sd_coefficients(cm, r.curvature_part.at(s));
        for (int k = 0; k < 3; ++k) y[lay.rc_at(s, k)] = lay.wc * t[k];
    }
    return y;
}

std::vector<double> jacobian_apply(const SWConfiguration& cfg, const std::vector<double>& dx) {
    const Grid4& g = cfg.A.grid;
    const Layout lay(g);
    if (std::int64_t(dx.size()) != lay.params())
        throw std::invalid_argument("direction size does not match the parameter layout");
    const CliffordModel& cm = clifford_model();
    const complexd iq = J * cfg.q.value();
    const double q2 = double(cfg.q.doubled);

    GaugeField dA(g);
    for (int mu = 0; mu < 4; ++mu) {
        dA.a[mu] = unpack_a(lay, dx, mu);
        project_zero_mean(dA.a[mu]);
    }
    const SpinorField dphi = unpack_phi(g, lay, dx);

    const SpinorField Dd = dirac4(cfg.A, cfg.q, dphi);
    const TwoFormField dF = curvature(dA);

    std::vector<double> y(lay.residuals());
    for (std::int64_t s = 0; s < lay.vol; ++s) {
        const WeylValue phi = weyl_at(cfg.phi, s);
        WeylValue d = WeylValue(Dd.v[2 * s], Dd.v[2 * s + 1]);
        for (int mu = 0; mu < 4; ++mu) {
            const double amu = dx[mu] + dA.a[mu][s];
            d += iq * amu * (cm.block_pm[mu] * phi);
        }
        for (int c = 0; c < 2; ++c) {
            const complexd z = lay.wd * d(c);
            y[lay.rd_at(s, c, 0)] = z.real();
            y[lay.rd_at(s, c, 1)] = z.imag();
        }

        const std::array<double, 3> tau = sd_coefficients(cm, dF.at(s));
        const WeylValue dp = weyl_at(dphi, s);
        for (int k = 0; k < 3; ++k) {
            const double sig = 0.5 * (phi.dot(cm.pauli[k] * dp)).real();
            y[lay.rc_at(s, k)] = lay.wc * (q2 * tau[k] - sig);
        }
    }
    return y;
}

std::vector<double> jacobian_adjoint_apply(const SWConfiguration& cfg,
                                           const std::vector<double>& y) {
    const Grid4& g = cfg.A.grid;
    const Layout lay(g);
    if (std::int64_t(y.size()) != lay.residuals())
        throw std::invalid_argument("residual size does not match the layout");
    const CliffordModel& cm = clifford_model();
    const complexd iq = J * cfg.q.value();
    const double q2 = double(cfg.q.doubled);

    SpinorField yd(g, Chirality::minus);
    for (std::int64_t s = 0; s < lay.vol; ++s)
        for (int c = 0; c < 2; ++c)
            yd.v[2 * s + c] = complexd(y[lay.rd_at(s, c, 0)], y[lay.rd_at(s, c, 1)]);

    std::vector<double> x(lay.params(), 0.0);

    // Dirac block: the operator is formally self-adjoint on full spinors, so
    // the adjoint of its plus-to-minus block is its minus-to-plus block.
    const SpinorField Dt = dirac4(cfg.A, cfg.q, yd);
    for (std::int64_t s = 0; s < lay.vol; ++s) {
        const WeylValue phi = weyl_at(cfg.phi, s);
        WeylValue xp = lay.wd * WeylValue(Dt.v[2 * s], Dt.v[2 * s + 1]);
        for (int k = 0; k < 3; ++k)
            xp -= 0.5 * lay.wc * y[lay.rc_at(s, k)] * (cm.pauli[k] * phi);
        x[lay.phi_at(s, 0, 0)] = xp(0).real();
        x[lay.phi_at(s, 0, 1)] = xp(0).imag();
        x[lay.phi_at(s, 1, 0)] = xp(1).real();
        x[lay.phi_at(s, 1, 1)] = xp(1).imag();

        const WeylValue ym = weyl_at(yd, s);
        for (int mu = 0; mu < 4; ++mu) {
            const double coef = lay.wd * (ym.dot(iq * (cm.block_pm[mu] * phi))).real();
            x[lay.a_at(mu, s)] += coef;
            x[mu] += coef;
        }
    }

    // Curvature block: pair the self-dual coefficients back into a real
    // two-form T and integrate by parts, exact for the spectral derivative.
    for (int p = 0; p < 6; ++p) {
        const auto [mu, nu] = TwoFormFibre::pairs[p];
        std::vector<double> T(lay.vol);
        for (std::int64_t s = 0; s < lay.vol; ++s) {
            double acc = 0;
            for (int k = 0; k < 3; ++k)
                acc += y[lay.rc_at(s, k)] * cm.sd_basis[k].c[p].real();
            T[s] = 0.5 * lay.wc * q2 * acc;
        }
        const std::vector<double> dmuT = spectral_partial_real(g, T, mu);
        const std::vector<double> dnuT = spectral_partial_real(g, T, nu);
        for (std::int64_t s = 0; s < lay.vol; ++s) {
            x[lay.a_at(nu, s)] -= dmuT[s];
            x[lay.a_at(mu, s)] += dnuT[s];
        }
    }

    for (int mu = 0; mu < 4; ++mu) {
        std::vector<double> xa = unpack_a(lay, x, mu);
        project_zero_mean(xa);
        for (std::int64_t s = 0; s < lay.vol; ++s) x[lay.a_at(mu, s)] = xa[s];
    }
    return x;
}

double objective_value(const SWConfiguration& cfg) {
    const std::vector<double> r = residual_vector(cfg);
    return dot(r, r);
}

std::vector<double> objective_gradient(const SWConfiguration& cfg) {
    std::vector<double> g = jacobian_adjoint_apply(cfg, residual_vector(cfg));
    for (double& v : g) v *= 2.0;
    return g;
}

namespace {

// Preconditioned CG on the damped normal equations (Jt J + lambda) dx = -g.
std::vector<double> solve_normal_equations(const SWConfiguration& cfg, double lambda,
                                           const std::vector<double>& grad,
                                           const SolverOptions& opts) {
    const Preconditioner M(cfg, lambda);

    std::vector<double> x(grad.size(), 0.0);
    std::vector<double> r(grad.size());
    for (std::size_t i = 0; i < grad.size(); ++i) r[i] = -grad[i];
    const double b_norm = norm(r);
    if (b_norm == 0.0) return x;

    std::vector<double> z = M.apply(r);
    std::vector<double> p = z;
    double rho = dot(r, z);
    for (int it = 0; it < opts.cg_max_iterations; ++it) {
        std::vector<double> Ap = jacobian_adjoint_apply(cfg, jacobian_apply(cfg, p));
        axpy(lambda, p, Ap);
        const double pAp = dot(p, Ap);
        if (!(pAp > 0)) break;
        const double alpha = rho / pAp;
        axpy(alpha, p, x);
        axpy(-alpha, Ap, r);
        if (norm(r) <= opts.cg_tolerance * b_norm) break;
        z = M.apply(r);
        const double rho_new = dot(r, z);
        const double beta = rho_new / rho;
        rho = rho_new;
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
    }
    return x;
}

}  // namespace

SolveResult solve_least_squares(const SWConfiguration& cfg0, const SolverOptions& opts) {
    check_configuration(cfg0);

    SolveResult res;
    res.configuration = cfg0;
    std::vector<double> r = residual_vector(res.configuration);
    double obj = dot(r, r);
    res.log.rows.push_back({0, obj, 0.0, 0.0});

    if (!std::isfinite(obj)) {
        res.objective = obj;
        res.reason = TerminationReason::divergence;
        return res;
    }
    if (obj <= opts.tolerance) {
        res.objective = obj;
        res.reason = TerminationReason::tolerance;
        return res;
    }

    double lambda = opts.initial_damping;
    int stagnant = 0;
    res.reason = TerminationReason::max_iterations;

    for (int it = 1; it <= opts.max_iterations; ++it) {
        const std::vector<double> grad = jacobian_adjoint_apply(res.configuration, r);

        bool accepted = false;
        double lambda_used = lambda;
        std::vector<double> step;
        SWConfiguration cand;
        std::vector<double> r_new;
        double obj_new = 0;

        for (int attempt = 0; attempt < 8 && !accepted; ++attempt) {
            step = solve_normal_equations(res.configuration, lambda, grad, opts);
            cand = apply_step(res.configuration, step);
            r_new = residual_vector(cand);
            obj_new = dot(r_new, r_new);
            if (std::isfinite(obj_new) && obj_new < obj) {
                accepted = true;
                lambda_used = lambda;
            } else {
                lambda *= opts.damping_increase;
            }
        }

        if (!accepted) {
            // Normal equations too ill-conditioned to make progress; fall back
            // to steepest descent with backtracking.
            const double g2 = dot(grad, grad);
            double alpha = g2 > 0 ? obj / g2 : 0.0;
            for (int bt = 0; bt < 40 && !accepted && alpha > 0; ++bt) {
                step.assign(grad.size(), 0.0);
                axpy(-alpha, grad, step);
                cand = apply_step(res.configuration, step);
                r_new = residual_vector(cand);
                obj_new = dot(r_new, r_new);
                if (std::isfinite(obj_new) && obj_new < obj) {
                    accepted = true;
                    lambda_used = lambda;
                } else {
                    alpha *= 0.5;
                }
            }
        }

        if (!accepted) {
            res.reason = TerminationReason::stagnation;
            break;
        }

        const double prev = obj;
        res.configuration = std::move(cand);
        r = std::move(r_new);
        obj = obj_new;
        res.iterations = it;
        res.log.rows.push_back({it, obj, norm(step), lambda_used});
        lambda = std::max(lambda * opts.damping_decrease, 1e-14);

        if (!std::isfinite(obj)) {
            res.reason = TerminationReason::divergence;
            break;
        }
        if (obj <= opts.tolerance) {
            res.reason = TerminationReason::tolerance;
            break;
        }
        const double rel = (prev - obj) / prev;
        stagnant = rel < opts.stagnation_decrease ? stagnant + 1 : 0;
        if (stagnant >= opts.stagnation_window) {
            res.reason = TerminationReason::stagnation;
            break;
        }
    }

    res.objective = obj;
    return res;
}

}  // namespace swlift
