#pragma once

#include "tumorbif/nutrient.hpp"
#include "tumorbif/ode.hpp"

#include <limits>
#include <string>

namespace tumorbif {

struct ModelParams {
    double mu = 1.0;          ///< aggressiveness
    double sigma_tilde = 0.5; ///< proliferation threshold
    double gamma = 0.0;       ///< adhesiveness
    PeriodicNutrient nutrient = PeriodicNutrient::constant(1.0);

    double period() const { return nutrient.period(); }
    /// Throws ConfigError unless mu > 0, sigma_tilde > 0 and gamma >= 0.
    void validate() const;
};

/// Growth rate of the flat boundary height: mu rho [Phi(t) tanh(rho)/rho - sigma_tilde].
double rhs(const ModelParams& params, double t, double rho);

struct IntegrateOptions {
    double max_step = std::numeric_limits<double>::infinity();
    double t0 = 0.0;
};

/// Adaptive solution from rho(t0) = rho0 up to t_end. Trial steps leaving the
/// exponential envelope rho0 e^{-mu sigma (t-t0)} <= rho <= rho0 e^{mu (Phi_max - sigma)(t-t0)}
/// by more than a relative 1e-8 are rejected.
Trajectory integrate(const ModelParams& params, double rho0, double t_end, double tol,
                     const IntegrateOptions& opts = {});

enum class RegimeKind { Extinction, PersistentPeriodic };

struct Regime {
    RegimeKind kind = RegimeKind::PersistentPeriodic;
    bool boundary = false; ///< sigma_tilde within the relative 1e-12 band of the nutrient mean
    double sigma_tilde = 0.0;
    double phi_bar = 0.0;
};

Regime classify(const ModelParams& params);
std::string to_string(RegimeKind kind);

/// Nutrient concentration inside the flat tumor, 0 <= y <= rho_t.
double sigma_profile(const ModelParams& params, double rho_t, double t, double y);
/// Pressure inside the flat tumor, 0 <= y <= rho_t.
double pressure_profile(const ModelParams& params, double rho_t, double t, double y);
/// dp/dy at the free boundary: mu sigma_tilde rho - mu Phi(t) tanh(rho).
double pressure_boundary_slope(const ModelParams& params, double rho_t, double t);

} // namespace tumorbif
