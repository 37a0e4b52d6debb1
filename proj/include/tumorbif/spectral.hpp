#pragma once

#include "tumorbif/periodic_solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tumorbif {

struct BifurcationRecord {
    double j = 0.0;
    double k1 = 0.0;
    double k2 = 0.0;
    double gamma_j = 0.0;
    std::string orbit_ref;
};

/// Period integral of Phi {1 - tanh(rho)/rho - tanh(rho) [a tanh(a rho) - b tanh(b rho)]},
/// a = sqrt(1+j), b = sqrt(j). Composite 8-point Gauss-Legendre on the orbit grid.
double k1(const PeriodicOrbit& orbit, double j);
/// Period integral of j^{3/2} tanh(sqrt(j) rho) / 2.
double k2(const PeriodicOrbit& orbit, double j);

BifurcationRecord gamma(const PeriodicOrbit& orbit, double j);
/// Same record with an explicit aggressiveness in place of the orbit's own mu.
BifurcationRecord gamma(const PeriodicOrbit& orbit, double j, double mu);

/// Unique zero of k1 by bisection to 1e-10. Throws BracketError if k1(0) >= 0.
double find_j0(const PeriodicOrbit& orbit);

/// Pointwise coefficient of the linearized amplitude equation S' + A S = 0.
double A_value(const ModelParams& params, double j, double gamma, double t, double rho);
/// The same coefficient with sigma_tilde eliminated through the flat ODE; needs rho'(t).
double A_value_rewritten(const ModelParams& params, double j, double gamma, double t, double rho,
                         double rho_prime);

struct ModeCoefficient {
    double j = 0.0;
    double gamma = 0.0;
    std::vector<double> times;     ///< orbit grid
    std::vector<double> A_samples; ///< A(t_i)
    std::vector<double> S_samples; ///< exp(-int_0^{t_i} A)
    double integral_A = 0.0;       ///< int_0^T A
    double S_period = 1.0;         ///< S(T)
};

ModeCoefficient A_coefficient(const PeriodicOrbit& orbit, double j, double gamma);

/// exp(-int_0^t A) at any t in [0, T] (dense Gauss-Legendre on partial cells).
double mode_amplitude(const PeriodicOrbit& orbit, double j, double gamma, double t);

struct MonotonicityScan {
    double j0 = 0.0;
    std::vector<double> js;
    std::vector<double> gammas;
    std::vector<double> derivatives;
    int sign_changes = 0;
    std::optional<double> turning_point;
    double max_gamma = 0.0;
};

/// Central-difference d gamma/dj on 200 geometric points in (j0, j_max].
MonotonicityScan monotonicity_scan(const PeriodicOrbit& orbit, double j_max);

struct SeriesCheck {
    double exact = 0.0;
    double series = 0.0;
    double tail_bound = 0.0;
};

/// tanh z against 2z sum_{k odd <= K} 1 / ((k pi / 2)^2 + z^2).
SeriesCheck tanh_series_check(double z, int K);

struct KDerivatives {
    double dk1 = 0.0;
    double dk2 = 0.0;
};

/// dk1/dj and dk2/dj from the partial-fraction expansion of tanh, odd k up to K.
/// The dk2 series converges like 1/K, so its tail beyond K is added in integral form.
KDerivatives dk_dj(const PeriodicOrbit& orbit, double j, int K = 999);

/// One record per j, rows computed in parallel.
std::vector<BifurcationRecord> gamma_table(const PeriodicOrbit& orbit, const std::vector<double>& js);
std::vector<BifurcationRecord> gamma_table_serial(const PeriodicOrbit& orbit, const std::vector<double>& js);

} // namespace tumorbif
