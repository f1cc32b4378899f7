#pragma once

#include "swlift/seiberg_witten.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace swlift {

// Damped Gauss-Newton on the stacked residual (dirac_part, curvature_part).
// tolerance bounds the objective, which is the squared weighted L2 norm of the
// stack, identical to residual_norm_sq up to roundoff.
struct SolverOptions {
    int max_iterations = 100;
    double tolerance = 1e-12;
    double initial_damping = 1e-4;
    double damping_increase = 10.0;
    double damping_decrease = 1.0 / 3.0;
    double stagnation_decrease = 1e-14;
    int stagnation_window = 5;
    int cg_max_iterations = 500;
    double cg_tolerance = 1e-4;
};

enum class TerminationReason { tolerance, max_iterations, stagnation, divergence };
std::string to_string(TerminationReason r);

struct ConvergenceLog {
    struct Row {
        int iteration = 0;
        double objective = 0;
        double step_norm = 0;
        double damping = 0;
    };
    std::vector<Row> rows;
    void write_csv(std::ostream& out) const;
};

struct SolveResult {
    SWConfiguration configuration;
    double objective = 0;
    int iterations = 0;
    TerminationReason reason = TerminationReason::max_iterations;
    ConvergenceLog log;
};

// Unknowns are packed as [4 holonomies][a, direction-major, zero-mean][phi
// re/im interleaved]; the oscillatory a block is projected to zero mean so the
// flat part flows through the holonomies only. Gauge freedom is not fixed.
std::size_t parameter_count(const SWConfiguration& cfg);
SWConfiguration apply_step(const SWConfiguration& cfg, const std::vector<double>& dx);

// Weighted residual stack, its Jacobian as a real-linear map, and the exact
// adjoint; exposed so tests can confirm <J dx, y> = <dx, Jt y> and compare the
// analytic objective gradient 2 Jt r against finite differences.
std::vector<double> residual_vector(const SWConfiguration& cfg);
std::vector<double> jacobian_apply(const SWConfiguration& cfg, const std::vector<double>& dx);
std::vector<double> jacobian_adjoint_apply(const SWConfiguration& cfg,
                                           const std::vector<double>& y);

double objective_value(const SWConfiguration& cfg);
std::vector<double> objective_gradient(const SWConfiguration& cfg);

SolveResult solve_least_squares(const SWConfiguration& cfg0, const SolverOptions& opts = {});

}
