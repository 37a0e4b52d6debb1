#pragma once

#include "tumorbif/flat_dynamics.hpp"
#include "tumorbif/ode.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace tumorbif {

/// Interval [x_bar, x2] mapped into itself by the period map.
struct Bracket {
    double x_bar = 0.0;
    double x2 = 0.0;
};

Bracket bracket(const ModelParams& params);

/// rho(T) for rho(0) = rho0. In the persistent regime a start inside the
/// bracket that leaves it by more than 1e-8 raises std::logic_error.
double poincare_map(const ModelParams& params, double rho0, double tol);

/// Gauss-Legendre node of the cached orbit quadrature.
struct OrbitNode {
    double t;
    double weight;
    double rho;
    double phi;
};

struct PeriodicOrbit {
    static constexpr int kGaussPoints = 8;

    ModelParams params;
    double rho0_star = 0.0;
    std::vector<double> grid;   ///< N+1 uniform times on [0, T]
    std::vector<double> values; ///< rho*(grid[i]); values.back() == rho0_star
    double residual = 0.0;      ///< |F(rho0_star) - rho0_star|
    double rho_min = 0.0;
    double rho_max = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;
    Bracket search_bracket;
    double tol = 0.0;
    int iterations = 0;

    std::shared_ptr<const Trajectory> trajectory;
    std::vector<OrbitNode> nodes; ///< kGaussPoints per grid cell

    double period() const { return params.period(); }
    int cells() const { return static_cast<int>(grid.size()) - 1; }
    /// rho*(t mod T) from the dense output.
    double operator()(double t) const;
    /// rho*'(t), from the vector field.
    double derivative(double t) const;
};

struct FindOptions {
    double tol = 1e-12;
    int grid = 512;
    int max_iterations = 200;
    std::optional<Bracket> search; ///< sub-interval of the bracket to search instead
};

PeriodicOrbit find_periodic(const ModelParams& params, const FindOptions& opts = {});

struct AttractionEstimate {
    double delta_empirical = 0.0;
    double delta_formula = 0.0;
    double C = 0.0;
    double slope = 0.0;      ///< fitted slope of log|rho(kT) - rho0*| against kT
    double intercept = 0.0;
    double r_squared = 0.0;
    double m_min = 0.0;
    double m_bar_min = 0.0;
    std::vector<double> errors; ///< |rho(kT) - rho0*|, k = 0..K
    int points_used = 0;
};

/// Errors smaller than this are treated as integration noise and left out of the fit.
inline constexpr double kAttractionFitFloor = 1e-9;

AttractionEstimate attraction_rate(const PeriodicOrbit& orbit, double rho0, double horizon);

/// max |rho(t+T) - rho(t)| over the grid, re-integrating the orbit over two periods.
double periodicity_defect(const PeriodicOrbit& orbit);

} // namespace tumorbif
