#pragma once

#include "tumorbif/periodic_solver.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tumorbif {

struct OracleReport {
    std::string name;
    double primary_value = 0.0;
    double oracle_value = 0.0;
    double abs_diff = 0.0;
    double rel_diff = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string status = "failed"; ///< "passed", "failed" or "skipped"
};

/// Compares on rel_diff, or on abs_diff when either value is below 1e-12 in magnitude.
OracleReport make_report(std::string name, double primary, double oracle, double tolerance);
OracleReport skipped_report(std::string name, double tolerance);

/// Classical RK4 with a fixed number of steps per period and compensated accumulation.
double refine_integrate(const ModelParams& params, double rho0, double t_end,
                        long steps_per_period = 1'000'000);

/// Thomas algorithm for sub[i] x[i-1] + diag[i] x[i] + sup[i] x[i+1] = rhs[i].
/// Throws SingularSystem on a vanishing pivot.
std::vector<double> solve_tridiagonal(std::vector<double> sub, std::vector<double> diag,
                                      std::vector<double> sup, std::vector<double> rhs);

struct BvpProfile {
    std::vector<double> y;
    std::vector<double> values;
};

/// -w'' + (1+j) w = 0, w'(0) = 0, w(rho*) = -Phi tanh(rho*), on `nodes` cells;
/// values are Richardson-extrapolated with the doubled grid.
BvpProfile bvp_w_solve(const PeriodicOrbit& orbit, int n, int m, double t, int nodes);

struct BvpModeResult {
    double dq_dy = 0.0;              ///< Richardson-extrapolated boundary slope
    std::vector<double> grid_values; ///< raw slopes on nodes, 2 nodes, 4 nodes
    double observed_order = 0.0;
};

/// -q'' + j q = mu w, q'(0) = 0, q(rho*) = gamma j / 2 - dp*/dy(rho*), unit amplitude,
/// with w from the finite-difference solve on the same grid.
BvpModeResult bvp_mode_solve(const PeriodicOrbit& orbit, int n, int m, double t, int nodes,
                             std::optional<double> gamma = std::nullopt);

/// Both forms of the amplitude coefficient on the orbit grid; rho*' is taken from the
/// flat ODE plus `rho_prime_bias`. rel_diff is the max difference over the sup-norm.
OracleReport dual_formula_A(const PeriodicOrbit& orbit, double j, double gamma,
                            double rho_prime_bias = 0.0);

/// The full oracle battery for one parameter point. Orbit-dependent checks are
/// marked skipped in the extinction regime.
std::vector<OracleReport> validation_suite(const ModelParams& params, double tol, std::uint64_t seed);

} // namespace tumorbif
