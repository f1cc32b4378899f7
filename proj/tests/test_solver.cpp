#include "doctest.h"

#include "swlift/rng.hpp"
#include "swlift/solver.hpp"

#include <cmath>
#include <sstream>

using namespace swlift;

namespace {

SWConfiguration random_config(const Grid4& g, std::uint64_t seed, int kmax, Charge q) {
    SWConfiguration cfg;
    cfg.A = random_gauge(g, seed, kmax, 0.3);
    cfg.phi = random_spinor(g, seed + 1, kmax, Chirality::plus);
    cfg.q = q;
    cfg.mu = random_imag_sd_twoform(g, seed + 2, kmax);
    return cfg;
}

// Flat connection with integral holonomy plus a matching plane-wave spinor:
// the shifted momentum vanishes, so the Dirac part is zero, and mu kills the
// curvature part, making the configuration an exact solution.
SWConfiguration exact_solution(const Grid4& g) {
    SWConfiguration cfg;
    cfg.A = GaugeField(g);
    cfg.A.holonomy = {2.0, 0.0, 0.0, 0.0};
    cfg.q = Charge{1};
    cfg.phi = SpinorField(g, Chirality::plus);
    const WeylValue phi0(complexd(1.1, 0.0), complexd(0.4, -0.3));
    for (std::int64_t s = 0; s < g.volume(); ++s) {
        const complexd phase = std::exp(complexd(0.0, -g.coordinate(g.coords(s)[0])));
        cfg.phi.v[2 * s] = phase * phi0(0);
        cfg.phi.v[2 * s + 1] = phase * phi0(1);
    }
    cfg.mu = manufactured_mu(cfg.A, cfg.phi, cfg.q);
    return cfg;
}

std::vector<double> random_vector(std::size_t n, Rng& rng) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.normal();
    return v;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

}  // namespace

TEST_CASE("stacked objective agrees with the residual norms") {
    const Grid4 g(4);
    for (std::uint64_t seed : {10u, 11u}) {
        const SWConfiguration cfg = random_config(g, seed, 1, Charge{1});
        const double a = objective_value(cfg);
        const double b = residual_norm_sq(sw_residual(cfg));
        CHECK(std::abs(a - b) <= 1e-12 * (1.0 + a));
    }
}

TEST_CASE("jacobian and its adjoint pair correctly") {
    const Grid4 g(4);
    Rng rng(501);
    const SWConfiguration cfg = random_config(g, 20, 1, Charge{-2});
    for (int trial = 0; trial < 5; ++trial) {
        const std::vector<double> x = random_vector(parameter_count(cfg), rng);
        const std::vector<double> y = random_vector(std::size_t(7 * g.volume()), rng);
        const double lhs = dot(jacobian_apply(cfg, x), y);
        const double rhs = dot(x, jacobian_adjoint_apply(cfg, y));
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("analytic gradient matches central finite differences") {
    const Grid4 g(4);
    Rng rng(502);
    const SWConfiguration cfg = random_config(g, 30, 1, Charge{1});
    const std::vector<double> grad = objective_gradient(cfg);
    const double eps = 1e-4;
    for (int dir = 0; dir < 10; ++dir) {
        std::vector<double> v = random_vector(grad.size(), rng);
        const double vn = std::sqrt(dot(v, v));
        for (double& x : v) x /= vn;

        std::vector<double> step(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) step[i] = eps * v[i];
        const double fp = objective_value(apply_step(cfg, step));
        for (std::size_t i = 0; i < v.size(); ++i) step[i] = -eps * v[i];
        const double fm = objective_value(apply_step(cfg, step));

        const double fd = (fp - fm) / (2.0 * eps);
        const double an = dot(grad, v);
        CHECK(std::abs(an - fd) <= 1e-6 * (1.0 + std::abs(fd)));
    }
}

TEST_CASE("step application projects the flat direction onto holonomies") {
    const Grid4 g(4);
    const SWConfiguration cfg = random_config(g, 40, 1, Charge{1});
    std::vector<double> dx(parameter_count(cfg), 0.0);
    for (std::int64_t s = 0; s < g.volume(); ++s) dx[4 + 2 * g.volume() + s] = 0.7;
    dx[1] = 0.25;
    const SWConfiguration out = apply_step(cfg, dx);
    for (std::int64_t s = 0; s < g.volume(); ++s)
        CHECK(std::abs(out.A.a[2][s] - cfg.A.a[2][s]) <= 1e-14);
    CHECK(out.A.holonomy[1] == cfg.A.holonomy[1] + 0.25);

    // Gradient a-blocks are zero-mean for the same reason.
    const std::vector<double> grad = objective_gradient(cfg);
    for (int mu = 0; mu < 4; ++mu) {
        double mean = 0;
        for (std::int64_t s = 0; s < g.volume(); ++s) mean += grad[4 + mu * g.volume() + s];
        CHECK(std::abs(mean / double(g.volume())) <= 1e-12);
    }
}

TEST_CASE("exact start accepts zero iterations") {
    const SWConfiguration cfg = exact_solution(Grid4(4));
    CHECK(objective_value(cfg) <= 1e-24);

    const SolveResult res = solve_least_squares(cfg);
    CHECK(res.reason == TerminationReason::tolerance);
    CHECK(res.iterations == 0);
    CHECK(res.objective <= 1e-24);
    CHECK(res.log.rows.size() == 1);
}

TEST_CASE("iteration budget is honored") {
    const Grid4 g(4);
    Rng rng(503);
    SWConfiguration cfg = exact_solution(g);
    std::vector<double> noise(parameter_count(cfg));
    for (double& x : noise) x = 1e-3 * rng.normal();
    cfg = apply_step(cfg, noise);

    SolverOptions opts;
    opts.max_iterations = 0;
    opts.tolerance = 1e-30;
    SolveResult res = solve_least_squares(cfg, opts);
    CHECK(res.reason == TerminationReason::max_iterations);
    CHECK(res.iterations == 0);

    opts.max_iterations = 1;
    res = solve_least_squares(cfg, opts);
    CHECK(res.reason == TerminationReason::max_iterations);
    CHECK(res.iterations <= 1);
}

TEST_CASE("basin run converges from a perturbed exact solution") {
    const Grid4 g(8);
    Rng rng(504);
    const SWConfiguration exact = exact_solution(g);
    std::vector<double> noise(parameter_count(exact));
    for (double& x : noise) x = 1e-3 * rng.normal();
    const SWConfiguration start = apply_step(exact, noise);
    CHECK(objective_value(start) > 1e-6);

    SolverOptions opts;
    opts.max_iterations = 40;
    opts.tolerance = 1e-12;
    const SolveResult res = solve_least_squares(start, opts);
    CHECK(res.reason == TerminationReason::tolerance);
    CHECK(res.objective <= 1e-12);
    CHECK(res.iterations <= 25);

    // Accepted steps decrease the objective monotonically.
    for (std::size_t i = 1; i < res.log.rows.size(); ++i)
        CHECK(res.log.rows[i].objective < res.log.rows[i - 1].objective);

    // Deterministic: a second run reproduces the iterate bit for bit.
    const SolveResult res2 = solve_least_squares(start, opts);
    CHECK(res2.objective == res.objective);
    CHECK(res2.iterations == res.iterations);
    REQUIRE(res2.configuration.phi.v.size() == res.configuration.phi.v.size());
    for (std::size_t i = 0; i < res.configuration.phi.v.size(); ++i)
        CHECK(res2.configuration.phi.v[i] == res.configuration.phi.v[i]);
}

TEST_CASE("infeasible constant mode reports stagnation") {
    // A constant self-dual mu cannot be matched by any curl, and phi = 0 is a
    // critical point of the quadratic terms, so no descent direction exists.
    const Grid4 g(4);
    const CliffordModel& cm = clifford_model();
    SWConfiguration cfg;
    cfg.A = GaugeField(g);
    cfg.phi = SpinorField(g, Chirality::plus);
    cfg.q = Charge{1};
    cfg.mu = TwoFormField(g);
    for (std::int64_t s = 0; s < g.volume(); ++s) {
        TwoFormFibre f;
        for (int p = 0; p < 6; ++p) f.c[p] = complexd(0.0, 0.3) * cm.sd_basis[0].c[p];
        cfg.mu.set(s, f);
    }

    SolverOptions opts;
    opts.tolerance = 1e-30;
    opts.max_iterations = 50;
    const SolveResult res = solve_least_squares(cfg, opts);
    CHECK(res.reason == TerminationReason::stagnation);
    CHECK(res.objective > 1.0);

    // An oscillatory admixture is absorbed, then the same floor stalls it.
    SWConfiguration mixed = cfg;
    const TwoFormField osc = random_imag_sd_twoform(g, 77, 1);
    for (std::size_t i = 0; i < mixed.mu.v.size(); ++i) mixed.mu.v[i] += 0.1 * osc.v[i];
    const SolveResult res2 = solve_least_squares(mixed, opts);
    CHECK(res2.reason == TerminationReason::stagnation);
    CHECK(res2.objective > 1.0);
    CHECK(res2.objective <= objective_value(mixed));
}

TEST_CASE("non-finite objective reports divergence") {
    SWConfiguration cfg = exact_solution(Grid4(4));
    cfg.phi.v[3] = complexd(std::numeric_limits<double>::quiet_NaN(), 0.0);
    const SolveResult res = solve_least_squares(cfg);
    CHECK(res.reason == TerminationReason::divergence);
}

TEST_CASE("convergence log serializes to csv") {
    ConvergenceLog log;
    log.rows.push_back({0, 1.0, 0.0, 0.0});
    log.rows.push_back({1, 0.25, 0.5, 1e-4});
    std::ostringstream out;
    log.write_csv(out);
    const std::string text = out.str();
    CHECK(text.rfind("iteration,objective,step_norm,damping\n", 0) == 0);
    std::size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == 3);
}
