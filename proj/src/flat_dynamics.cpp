#include "tumorbif/flat_dynamics.hpp"

#include "tumorbif/errors.hpp"
#include "tumorbif/hyperbolic.hpp"

#include <cmath>
#include <string>

namespace tumorbif {

void ModelParams::validate() const
{
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw ConfigError("mu must be positive and finite");
    if (!(sigma_tilde > 0.0) || !std::isfinite(sigma_tilde))
        throw ConfigError("sigma_tilde must be positive and finite");
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw ConfigError("gamma must be non-negative and finite");
}

double rhs(const ModelParams& params, double t, double rho)
{
    if (!(rho > 0.0))
        throw DomainError("rho must be positive, got " + std::to_string(rho));
    return params.mu * rho * (params.nutrient(t) * tanh_over_x(rho) - params.sigma_tilde);
}

Trajectory integrate(const ModelParams& params, double rho0, double t_end, double tol,
                     const IntegrateOptions& opts)
{
    if (!(rho0 > 0.0) || !std::isfinite(rho0))
        throw DomainError("initial radius must be positive");
    if (!(t_end > opts.t0))
        throw DomainError("t_end must exceed the start time");
    if (!(tol >= 1e-13 && tol <= 1e-4))
        throw DomainError("tolerance must lie in [1e-13, 1e-4]");

    const double t0 = opts.t0;
    const double decay = params.mu * params.sigma_tilde;
    const double growth = params.mu * (params.nutrient.stats().max - params.sigma_tilde);
    constexpr double slack = 1e-8;

    auto f = [&](double t, double y) {
        // trial stages may dip below zero; keep the vector field finite there
        if (!(y > 0.0))
            return params.mu * y * (params.nutrient(t) - params.sigma_tilde);
        return rhs(params, t, y);
    };
    auto inside_envelope = [&](double t, double y) {
        if (!(y > 0.0))
            return false;
        const double dt = t - t0;
        const double lower = rho0 * std::exp(-decay * dt);
        const double upper = rho0 * std::exp(growth * dt);
        return y >= lower * (1.0 - slack) && y <= upper * (1.0 + slack);
    };

    Dopri5Options o;
    o.tol = tol;
    o.max_step = opts.max_step;
    return dopri5(f, t0, rho0, t_end, o, inside_envelope);
}

Regime classify(const ModelParams& params)
{
    Regime r;
    r.sigma_tilde = params.sigma_tilde;
    r.phi_bar = params.nutrient.mean();
    r.boundary = std::fabs(r.sigma_tilde - r.phi_bar) <= 1e-12 * std::fabs(r.phi_bar);
    r.kind = (r.boundary || r.sigma_tilde >= r.phi_bar) ? RegimeKind::Extinction
                                                        : RegimeKind::PersistentPeriodic;
    return r;
}

std::string to_string(RegimeKind kind)
{
    return kind == RegimeKind::Extinction ? "Extinction" : "PersistentPeriodic";
}

namespace {
void check_depth(double rho_t, double y)
{
    if (!(rho_t > 0.0))
        throw DomainError("boundary height must be positive");
    if (!(y >= 0.0 && y <= rho_t))
        throw DomainError("depth y must lie in [0, rho]");
}
} // namespace

double sigma_profile(const ModelParams& params, double rho_t, double t, double y)
{
    check_depth(rho_t, y);
    return params.nutrient(t) * cosh_ratio(y, rho_t);
}

double pressure_profile(const ModelParams& params, double rho_t, double t, double y)
{
    check_depth(rho_t, y);
    const double mu = params.mu;
    const double s = params.sigma_tilde;
    const double phi = params.nutrient(t);
    return 0.5 * mu * s * (y - rho_t) * (y + rho_t) + mu * phi * (1.0 - cosh_ratio(y, rho_t));
}

double pressure_boundary_slope(const ModelParams& params, double rho_t, double t)
{
    return params.mu * params.sigma_tilde * rho_t - params.mu * params.nutrient(t) * std::tanh(rho_t);
}

} // namespace tumorbif
