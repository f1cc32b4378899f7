#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "swlift/clifford.hpp"
#include "swlift/field_io.hpp"
#include "swlift/fields.hpp"
#include "swlift/kk.hpp"
#include "swlift/report.hpp"
#include "swlift/ricci.hpp"
#include "swlift/rng.hpp"
#include "swlift/sasaki.hpp"
#include "swlift/seiberg_witten.hpp"
#include "swlift/solver.hpp"
#include "swlift/spectral.hpp"
#include "swlift/version.hpp"

namespace fs = std::filesystem;
using namespace swlift;

namespace {

constexpr complexd I{0.0, 1.0};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    int n = 8;
    int kmax = 2;
    std::uint64_t seed = 1;
    int charge2 = 1;
    double radius = 2.0;

    double tol_identity = 1e-12;
    double tol_fields = 1e-11;
    double tol_lift = 1e-10;
    double tol_oracle = 1e-6;
    double tol_table = 1e-12;

    SolverOptions solver;
    double perturbation = 1e-3;
    double cross_check_factor = 100.0;

    std::vector<double> lambdas = {-8.0, -4.0, 2.0, 6.0, 10.0};
    double ricci_c = 1.0;
    double ricci_r = 1.0;

    std::string out_dir = ".";
};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Flat key = value files with [section] headers; keys are stored qualified as
// section.key. Comments start with # or ;.
std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line, section;
    while (std::getline(in, line)) {
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("malformed config line: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw UsageError("malformed config line: " + line);
        kv[section.empty() ? key : section + "." + key] = val;
    }
    return kv;
}

double to_double(const std::string& key, const std::string& val) {
    std::size_t used = 0;
    double x = 0;
    try {
        x = std::stod(val, &used);
    } catch (const std::exception&) {
        throw UsageError("config value for " + key + " is not a number: " + val);
    }
    if (used != val.size()) throw UsageError("config value for " + key + " is not a number: " + val);
    return x;
}

long long to_int(const std::string& key, const std::string& val) {
    std::size_t used = 0;
    long long x = 0;
    try {
        x = std::stoll(val, &used);
    } catch (const std::exception&) {
        throw UsageError("config value for " + key + " is not an integer: " + val);
    }
    if (used != val.size())
        throw UsageError("config value for " + key + " is not an integer: " + val);
    return x;
}

std::vector<double> to_double_list(const std::string& key, std::string val) {
    for (char& c : val)
        if (c == ',') c = ' ';
    std::istringstream in(val);
    std::vector<double> out;
    double x;
    while (in >> x) out.push_back(x);
    if (!in.eof()) throw UsageError("config value for " + key + " is not a number list");
    return out;
}

RunConfig load_config(const std::string& path) {
    RunConfig cfg;
    if (path.empty()) return cfg;
    for (const auto& [key, val] : parse_config_file(path)) {
        if (key == "grid.n") cfg.n = int(to_int(key, val));
        else if (key == "grid.kmax") cfg.kmax = int(to_int(key, val));
        else if (key == "run.seed") cfg.seed = std::uint64_t(to_int(key, val));
        else if (key == "model.charge2") cfg.charge2 = int(to_int(key, val));
        else if (key == "model.radius") cfg.radius = to_double(key, val);
        else if (key == "tolerances.identity") cfg.tol_identity = to_double(key, val);
        else if (key == "tolerances.fields") cfg.tol_fields = to_double(key, val);
        else if (key == "tolerances.lift") cfg.tol_lift = to_double(key, val);
        else if (key == "tolerances.oracle") cfg.tol_oracle = to_double(key, val);
        else if (key == "tolerances.table") cfg.tol_table = to_double(key, val);
        else if (key == "solver.max_iterations") cfg.solver.max_iterations = int(to_int(key, val));
        else if (key == "solver.tolerance") cfg.solver.tolerance = to_double(key, val);
        else if (key == "solver.initial_damping") cfg.solver.initial_damping = to_double(key, val);
        else if (key == "solver.cg_max_iterations")
            cfg.solver.cg_max_iterations = int(to_int(key, val));
        else if (key == "solver.cg_tolerance") cfg.solver.cg_tolerance = to_double(key, val);
        else if (key == "solve.perturbation") cfg.perturbation = to_double(key, val);
        else if (key == "solve.cross_check_factor") cfg.cross_check_factor = to_double(key, val);
        else if (key == "ke.lambdas") cfg.lambdas = to_double_list(key, val);
        else if (key == "ricci.c") cfg.ricci_c = to_double(key, val);
        else if (key == "ricci.r") cfg.ricci_r = to_double(key, val);
        else if (key == "output.dir") cfg.out_dir = val;
        else throw UsageError("unknown config key: " + key);
    }
    return cfg;
}

void validate_config(const RunConfig& cfg) {
    if (cfg.n < 4 || cfg.n % 2 != 0) throw UsageError("grid.n must be even and at least 4");
    if (cfg.kmax < 0 || cfg.kmax > cfg.n / 4) throw UsageError("grid.kmax must lie in [0, n/4]");
    if (cfg.charge2 == 0) throw UsageError("model.charge2 must be nonzero");
    if (!(cfg.radius > 0)) throw UsageError("model.radius must be positive");
    if (cfg.solver.max_iterations < 0) throw UsageError("solver.max_iterations must be >= 0");
    if (!(cfg.perturbation >= 0)) throw UsageError("solve.perturbation must be >= 0");
}

std::string fmt(double x) {
    std::ostringstream out;
    out << std::setprecision(17) << x;
    return out.str();
}

void echo_config(Report& rep, const RunConfig& cfg) {
    rep.config["grid.n"] = std::to_string(cfg.n);
    rep.config["grid.kmax"] = std::to_string(cfg.kmax);
    rep.config["run.seed"] = std::to_string(cfg.seed);
    rep.config["model.charge2"] = std::to_string(cfg.charge2);
    rep.config["model.radius"] = fmt(cfg.radius);
    rep.config["tolerances.identity"] = fmt(cfg.tol_identity);
    rep.config["tolerances.fields"] = fmt(cfg.tol_fields);
    rep.config["tolerances.lift"] = fmt(cfg.tol_lift);
    rep.config["tolerances.oracle"] = fmt(cfg.tol_oracle);
    rep.config["tolerances.table"] = fmt(cfg.tol_table);
    rep.config["solver.max_iterations"] = std::to_string(cfg.solver.max_iterations);
    rep.config["solver.tolerance"] = fmt(cfg.solver.tolerance);
    rep.config["solver.initial_damping"] = fmt(cfg.solver.initial_damping);
    rep.config["solver.cg_max_iterations"] = std::to_string(cfg.solver.cg_max_iterations);
    rep.config["solver.cg_tolerance"] = fmt(cfg.solver.cg_tolerance);
    rep.config["solve.perturbation"] = fmt(cfg.perturbation);
    rep.config["solve.cross_check_factor"] = fmt(cfg.cross_check_factor);
    rep.config["ricci.c"] = fmt(cfg.ricci_c);
    rep.config["ricci.r"] = fmt(cfg.ricci_r);
    rep.config["output.dir"] = cfg.out_dir;
    std::string ls;
    for (double l : cfg.lambdas) ls += (ls.empty() ? "" : " ") + fmt(l);
    rep.config["ke.lambdas"] = ls;
}

int emit_report(Report& rep, const RunConfig& cfg, bool json,
                std::chrono::steady_clock::time_point start) {
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                            start)
                      .count();
    fs::create_directories(cfg.out_dir);
    const std::string json_text = report_to_json(rep);
    write_text_file(cfg.out_dir + "/" + rep.command + "-report.json", json_text);
    if (json) {
        std::cout << json_text;
    } else {
        std::cout << "swlift " << rep.command << " (version " << version_string << ")\n";
        for (const auto& c : rep.checks)
            std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " measured="
                      << std::setprecision(4) << std::scientific << c.measured
                      << " threshold=" << c.threshold << std::defaultfloat << "\n";
        std::cout << "overall: " << (rep.pass() ? "PASS" : "FAIL") << " ("
                  << std::setprecision(1) << std::fixed << rep.wall_ms << " ms)\n"
                  << std::defaultfloat;
    }
    return rep.pass() ? 0 : 1;
}

SWConfiguration random_sw(const Grid4& g, std::uint64_t seed, int kmax, Charge q) {
    SWConfiguration cfg;
    cfg.A = random_gauge(g, seed, kmax, 0.5);
    cfg.phi = random_spinor(g, seed + 1, kmax, Chirality::plus);
    cfg.q = q;
    cfg.mu = random_imag_sd_twoform(g, seed + 2, kmax);
    return cfg;
}

// Flat connection whose holonomy cancels the plane-wave momentum of phi, plus
// the matching mu; an exact zero of both residuals for any charge.
SWConfiguration plane_wave_solution(const Grid4& g, Charge q) {
    SWConfiguration cfg;
    cfg.A = GaugeField(g);
    cfg.A.holonomy = {1.0 / q.value(), 0.0, 0.0, 0.0};
    cfg.q = q;
    cfg.phi = SpinorField(g, Chirality::plus);
    const WeylValue phi0(complexd(1.2, 0.0), complexd(0.7, -0.4));
    for (std::int64_t s = 0; s < g.volume(); ++s) {
        const complexd phase = std::exp(-I * g.coordinate(g.coords(s)[0]));
        cfg.phi.v[2 * s] = phase * phi0(0);
        cfg.phi.v[2 * s + 1] = phase * phi0(1);
    }
    cfg.mu = manufactured_mu(cfg.A, cfg.phi, cfg.q);
    return cfg;
}

double rel(double dev, double scale) { return dev / (1.0 + scale); }

int cmd_verify(const RunConfig& cfg, bool json) {
    const auto start = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "verify";
    echo_config(rep, cfg);

    const IdentityReport ids = identity_suite(cfg.seed, 1000);
    for (const auto& c : ids.checks)
        rep.checks.push_back(make_check(c.name, c.measured, cfg.tol_identity));

    const Grid4 g(cfg.n);
    const Charge q{cfg.charge2};

    // Spectral derivative against the analytic derivative of a plane wave.
    {
        SpinorField f(g, Chirality::plus);
        for (std::int64_t s = 0; s < g.volume(); ++s) {
            const auto idx = g.coords(s);
            f.v[2 * s] = std::exp(I * (2.0 * g.coordinate(idx[0]) - g.coordinate(idx[2])));
            f.v[2 * s + 1] = std::exp(I * g.coordinate(idx[1]));
        }
        double dev = 0;
        const std::array<std::array<double, 2>, 4> wave{{{2, 0}, {0, 1}, {-1, 0}, {0, 0}}};
        for (int axis = 0; axis < 4; ++axis) {
            const SpinorField df = spectral_partial(f, axis);
            for (std::int64_t s = 0; s < g.volume(); ++s)
                for (int c = 0; c < 2; ++c)
                    dev = std::max(dev, std::abs(df.v[2 * s + c] -
                                                 I * wave[axis][c] * f.v[2 * s + c]));
        }
        rep.checks.push_back(make_check("spectral-derivative", dev, cfg.tol_fields));
    }

    // Parseval for the unnormalized forward transform.
    {
        const SpinorField f = random_spinor(g, cfg.seed + 3, cfg.kmax, Chirality::plus);
        cvector spec = f.v;
        spectral::forward(g, spec, 2);
        double sum = 0;
        for (const complexd& z : spec) sum += std::norm(z);
        sum *= g.cell_volume() / double(g.volume());
        const double direct = l2_norm_sq(f);
        rep.checks.push_back(
            make_check("parseval", std::abs(sum - direct) / (1.0 + direct), cfg.tol_fields));
    }

    // Bianchi identity for the curvature of a random gauge field.
    {
        const GaugeField A = random_gauge(g, cfg.seed + 4, cfg.kmax, 0.5);
        const TwoFormField F = curvature(A);
        std::array<cvector, 6> dF;
        for (int p = 0; p < 6; ++p) {
            cvector comp(g.volume());
            for (std::int64_t s = 0; s < g.volume(); ++s) comp[s] = F.v[6 * s + p];
            dF[p] = comp;
        }
        auto pair_index = [](int a, int b) {
            for (int p = 0; p < 6; ++p)
                if (TwoFormFibre::pairs[p] == std::pair{a, b}) return p;
            return -1;
        };
        double dev = 0, scale = 0;
        const std::array<std::array<int, 3>, 4> triples{{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
        for (const auto& t : triples) {
            cvector sum(g.volume(), 0.0);
            for (int r = 0; r < 3; ++r) {
                const int a = t[r], b = t[(r + 1) % 3], c = t[(r + 2) % 3];
                const int p = pair_index(std::min(b, c), std::max(b, c));
                const double sgn = b < c ? 1.0 : -1.0;
                const cvector d = spectral::partial(g, dF[p], 1, a);
                for (std::int64_t s = 0; s < g.volume(); ++s) sum[s] += sgn * d[s];
            }
            for (std::int64_t s = 0; s < g.volume(); ++s) {
                dev = std::max(dev, std::abs(sum[s]));
                scale = std::max(scale, std::abs(dF[0][s]));
            }
        }
        rep.checks.push_back(make_check("bianchi", rel(dev, scale), cfg.tol_fields));
    }

    // Formal self-adjointness of the coupled Dirac operator.
    {
        const GaugeField A = random_gauge(g, cfg.seed + 5, cfg.kmax, 0.5);
        const SpinorField f = random_spinor(g, cfg.seed + 6, cfg.kmax, Chirality::full);
        const SpinorField h = random_spinor(g, cfg.seed + 7, cfg.kmax, Chirality::full);
        const complexd lhs = l2_inner(dirac4(A, q, f), h);
        const complexd rhs = l2_inner(f, dirac4(A, q, h));
        rep.checks.push_back(
            make_check("dirac-self-adjoint", std::abs(lhs - rhs) / (1.0 + std::abs(lhs)),
                       cfg.tol_fields));
    }

    // Residual norms are gauge and conjugation invariant.
    {
        const SWConfiguration sw = random_sw(g, cfg.seed + 8, cfg.kmax, q);
        const SWResidual r0 = sw_residual(sw);
        const double n0 = std::sqrt(residual_norm_sq(r0));

        GaugeTransform h;
        h.winding = {1, 0, 0, 0};
        const double n1 = std::sqrt(residual_norm_sq(sw_residual(gauge_transform(sw, h))));
        rep.checks.push_back(
            make_check("gauge-invariance", std::abs(n1 - n0) / (1.0 + n0), cfg.tol_fields));

        const double n2 =
            std::sqrt(residual_norm_sq(sw_residual(charge_conjugate_config(sw))));
        rep.checks.push_back(
            make_check("conjugation-invariance", std::abs(n2 - n0) / (1.0 + n0),
                       cfg.tol_fields));
    }

    return emit_report(rep, cfg, json, start);
}

int cmd_lift_check(const RunConfig& cfg, bool json) {
    const auto start = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "lift-check";
    echo_config(rep, cfg);

    const Grid4 g(cfg.n);
    const CliffordModel& cm = clifford_model();

    std::vector<int> charges{cfg.charge2, 1, 2};
    std::sort(charges.begin(), charges.end());
    charges.erase(std::unique(charges.begin(), charges.end()), charges.end());

    // Two independent constructions of the circle-bundle Dirac operator.
    {
        double dev = 0;
        for (int dq : charges) {
            const Charge q{dq};
            KKGeometry geom{random_gauge(g, cfg.seed + 10 + dq, cfg.kmax, 0.5),
                            RadiusProfile{cfg.radius}, q};
            const SpinorField phi =
                random_spinor(g, cfg.seed + 20 + dq, cfg.kmax, Chirality::plus);
            const SectorSpinor psi = lift(phi, q);
            const SectorSpinor d1 = dirac_Y_frame(psi, geom);
            const SectorSpinor d2 = dirac_Y_reduced(psi, geom);
            double local = 0;
            for (std::size_t i = 0; i < d1.base.v.size(); ++i)
                local = std::max(local, std::abs(d1.base.v[i] - d2.base.v[i]));
            dev = std::max(dev, rel(local, l2_norm(d1.base)));
        }
        rep.checks.push_back(make_check("two-path-dirac", dev, cfg.tol_lift));
    }

    // Cubic residual equals the assembled Seiberg-Witten residuals, and both
    // parts can be recovered pointwise where the spinor does not vanish.
    {
        double did = 0, drec = 0, crec = 0;
        for (std::uint64_t s = 0; s < 3; ++s) {
            const SWConfiguration sw = random_sw(g, cfg.seed + 30 + s, cfg.kmax, Charge{cfg.charge2});
            KKGeometry geom{sw.A, RadiusProfile{cfg.radius}, sw.q};
            const DecompositionReport d = residual_decomposition_check(sw, geom);
            did = std::max(did, d.identity_dev);
            drec = std::max(drec, d.dirac_recovery_dev);
            crec = std::max(crec, d.curvature_recovery_dev);
        }
        rep.checks.push_back(make_check("residual-decomposition", did, cfg.tol_lift));
        rep.checks.push_back(make_check("dirac-recovery", drec, cfg.tol_lift));
        rep.checks.push_back(make_check("curvature-recovery", crec, cfg.tol_lift));
    }

    // Gauge equivariance and charge conjugation of the cubic residual.
    {
        const SWConfiguration sw = random_sw(g, cfg.seed + 40, cfg.kmax, Charge{cfg.charge2});
        KKGeometry geom{sw.A, RadiusProfile{cfg.radius}, sw.q};
        const SectorSpinor res = cubic_residual(lift(sw.phi, sw.q), geom, sw.mu);
        const double n0 = l2_norm(res.base);

        GaugeTransform h;
        h.winding = {1, 0, 0, 0};
        const SWConfiguration swg = gauge_transform(sw, h);
        KKGeometry geomg{swg.A, RadiusProfile{cfg.radius}, swg.q};
        const double n1 = l2_norm(cubic_residual(lift(swg.phi, swg.q), geomg, swg.mu).base);
        rep.checks.push_back(
            make_check("gauge-equivariance", std::abs(n1 - n0) / (1.0 + n0), cfg.tol_lift));

        const SWConfiguration swc = charge_conjugate_config(sw);
        KKGeometry geomc{swc.A, RadiusProfile{cfg.radius}, swc.q};
        const SectorSpinor resc = cubic_residual(lift(swc.phi, swc.q), geomc, swc.mu);
        double dev = 0;
        for (std::int64_t s = 0; s < g.volume(); ++s) {
            DiracValue w;
            for (int c = 0; c < 4; ++c) w(c) = res.base.v[4 * s + c];
            const DiracValue expect = cm.dvol * charge_conjugate_fibre(w);
            for (int c = 0; c < 4; ++c)
                dev = std::max(dev, std::abs(resc.base.v[4 * s + c] - expect(c)));
        }
        rep.checks.push_back(make_check("charge-conjugation", rel(dev, n0), cfg.tol_lift));
    }

    // Chirality-mixing split of the frame operator on plus lifts.
    {
        const Charge q{cfg.charge2};
        const GaugeField A = random_gauge(g, cfg.seed + 50, cfg.kmax, 0.5);
        const SpinorField phi = random_spinor(g, cfg.seed + 51, cfg.kmax, Chirality::plus);
        KKGeometry geom{A, RadiusProfile{cfg.radius}, q};
        const SectorSpinor D = dirac_Y_frame(lift(phi, q), geom);
        const SpinorField dx = dirac4(A, q, phi);
        const TwoFormField Fp = self_dual_part(curvature(A));
        const double m = geom.mass_at(0);

        double dev = 0, scale = l2_norm(D.base);
        for (std::int64_t s = 0; s < g.volume(); ++s) {
            const WeylValue p(phi.v[2 * s], phi.v[2 * s + 1]);
            const WeylValue plus_expect =
                m * p - (1.0 / (8.0 * m)) *
                            (gamma_two_form_plus(Fp.at(s)) * p) * double(q.doubled);
            dev = std::max(dev, std::abs(D.base.v[4 * s] - plus_expect(0)));
            dev = std::max(dev, std::abs(D.base.v[4 * s + 1] - plus_expect(1)));
            dev = std::max(dev, std::abs(D.base.v[4 * s + 2] - dx.v[2 * s]));
            dev = std::max(dev, std::abs(D.base.v[4 * s + 3] - dx.v[2 * s + 1]));
        }
        rep.checks.push_back(make_check("chirality-split", rel(dev, scale), cfg.tol_lift));

        rep.checks.push_back(make_check(
            "sector-mass", std::abs(geom.mass_at(0) - (-q.value() / cfg.radius)), 1e-15));
    }

    // Reduced-formula residual of a manufactured solution with varying radius.
    {
        const Charge q{cfg.charge2};
        const SWConfiguration sw = plane_wave_solution(g, q);
        KKGeometry geom{sw.A, RadiusProfile{}, q};
        geom.radius.field.resize(g.volume());
        for (std::int64_t s = 0; s < g.volume(); ++s)
            geom.radius.field[s] = 2.0 + 0.5 * std::sin(g.coordinate(g.coords(s)[0]));
        const SectorSpinor res = cubic_residual(lift(sw.phi, q), geom, sw.mu);
        rep.checks.push_back(make_check(
            "varying-radius", rel(l2_norm(res.base), l2_norm(sw.phi)), cfg.tol_lift));
    }

    return emit_report(rep, cfg, json, start);
}

int cmd_solve(const RunConfig& cfg, bool json) {
    const auto start = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "solve";
    echo_config(rep, cfg);

    const Grid4 g(cfg.n);
    const Charge q{cfg.charge2};
    const SWConfiguration exact = plane_wave_solution(g, q);

    Rng rng(cfg.seed);
    std::vector<double> noise(parameter_count(exact));
    for (double& x : noise) x = cfg.perturbation * rng.normal();
    const SWConfiguration initial = apply_step(exact, noise);

    const SolveResult res = solve_least_squares(initial, cfg.solver);

    fs::create_directories(cfg.out_dir);
    {
        std::ofstream csv(cfg.out_dir + "/convergence.csv", std::ios::binary);
        res.log.write_csv(csv);
    }
    io::write_sector_spinor(cfg.out_dir + "/phi.swf", res.configuration.phi, q);
    io::write_gauge(cfg.out_dir + "/gauge.swf", res.configuration.A);
    io::write_two_form(cfg.out_dir + "/mu.swf", res.configuration.mu);

    rep.config["solve.termination"] = to_string(res.reason);
    rep.config["solve.iterations"] = std::to_string(res.iterations);
    rep.checks.push_back(make_check("objective", res.objective, cfg.solver.tolerance));

    // The lifted final iterate must satisfy the cubic equation to the same
    // accuracy, up to a moderate equivalence factor.
    const double sw_norm = std::sqrt(std::max(res.objective, 0.0));
    KKGeometry geom{res.configuration.A, RadiusProfile{cfg.radius}, q};
    const SectorSpinor cubic =
        cubic_residual(lift(res.configuration.phi, q), geom, res.configuration.mu);
    const double ratio = l2_norm(cubic.base) / std::max(sw_norm, 1e-300);
    rep.checks.push_back(make_check("cubic-vs-sw-ratio", ratio, cfg.cross_check_factor));

    const int code = emit_report(rep, cfg, json, start);
    if (res.reason == TerminationReason::divergence) return 3;
    return code;
}

int cmd_ke_report(const RunConfig& cfg, bool json) {
    const auto start = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "ke-report";
    echo_config(rep, cfg);

    std::vector<double> lambdas;
    for (double l : cfg.lambdas)
        if (l != 0.0) lambdas.push_back(l);
    if (lambdas.empty()) throw UsageError("ke.lambdas must contain a nonzero value");

    std::ostringstream csv;
    csv << "lambda,r,m,norm_sq,nu_plus,nu_minus,alpha_g,alpha_eta,scal,gap\n";
    csv << std::setprecision(17);

    double dev_g = 0, dev_eta = 0, dev_scal = 0, dev_gap = 0, dev_sym = 0;
    for (double l : lambdas) {
        const SasakiReport row = sasaki_curvature_report(l);
        csv << row.lambda << ',' << row.r << ',' << row.m << ',' << row.norm_sq << ','
            << row.nu_plus << ',' << row.nu_minus << ',' << row.alpha_g << ','
            << row.alpha_eta << ',' << row.scal << ',' << row.gap << '\n';

        const double s = 1.0 + l * l;
        dev_g = std::max(dev_g, std::abs(row.alpha_g - (l - 2.0)) / s);
        dev_eta = std::max(dev_eta, std::abs(row.alpha_eta - (6.0 - l)) / s);
        dev_scal = std::max(dev_scal, std::abs(row.scal - 4.0 * (l - 1.0)) / s);
        dev_gap = std::max(dev_gap, std::abs(row.gap - (l - 6.0) * (l - 6.0) / 16.0) / s);
        dev_sym = std::max(dev_sym, std::abs(row.nu_plus + row.nu_minus));
    }

    fs::create_directories(cfg.out_dir);
    write_text_file(cfg.out_dir + "/ke-report.csv", csv.str());

    rep.checks.push_back(make_check("eta-einstein-horizontal", dev_g, cfg.tol_table));
    rep.checks.push_back(make_check("eta-einstein-vertical", dev_eta, cfg.tol_table));
    rep.checks.push_back(make_check("scalar-curvature", dev_scal, cfg.tol_table));
    rep.checks.push_back(make_check("friedrich-gap", dev_gap, cfg.tol_table));
    rep.checks.push_back(make_check("eigenvalue-symmetry", dev_sym, cfg.tol_table));
    return emit_report(rep, cfg, json, start);
}

int cmd_ricci_oracle(const RunConfig& cfg, bool json) {
    const auto start = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "ricci-oracle";
    echo_config(rep, cfg);

    TwoFormFibre F;
    F.c[0] = I * cfg.ricci_c;  // i c dx1 ^ dx2, the coordinate model's curvature
    const auto formula = ricci_kk(F, cfg.ricci_r);
    const auto oracle = ricci_coordinate_oracle(cfg.ricci_c, cfg.ricci_r);
    const double dev = (formula - oracle).cwiseAbs().maxCoeff();
    rep.checks.push_back(make_check("ricci-formula-vs-oracle", dev, cfg.tol_oracle));
    return emit_report(rep, cfg, json, start);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spin geometry toolkit for circle-bundle Dirac lifts of the "
                 "abelian monopole equations on the 4-torus"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_override;
    std::uint64_t seed_override = 0;
    bool json = false;
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--out", out_override, "output directory for reports and artifacts");
    auto* seed_opt = app.add_option("--seed", seed_override, "override the configured seed");
    app.add_flag("--json", json, "print the JSON report to stdout");

    auto* verify = app.add_subcommand("verify", "fibre identities and field-calculus checks");
    auto* liftc = app.add_subcommand("lift-check", "circle-bundle lift identities");
    auto* solve = app.add_subcommand("solve", "nonlinear least-squares solve");
    auto* kerep = app.add_subcommand("ke-report", "eta-Einstein eigenvalue table");
    auto* ricci = app.add_subcommand("ricci-oracle", "Ricci formula vs finite differences");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = load_config(config_path);
        if (*seed_opt) cfg.seed = seed_override;
        if (!out_override.empty()) cfg.out_dir = out_override;
        validate_config(cfg);

        if (verify->parsed()) return cmd_verify(cfg, json);
        if (liftc->parsed()) return cmd_lift_check(cfg, json);
        if (solve->parsed()) return cmd_solve(cfg, json);
        if (kerep->parsed()) return cmd_ke_report(cfg, json);
        if (ricci->parsed()) return cmd_ricci_oracle(cfg, json);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
