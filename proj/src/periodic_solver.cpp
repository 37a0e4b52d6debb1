#include "tumorbif/periodic_solver.hpp"

#include "tumorbif/errors.hpp"
#include "tumorbif/hyperbolic.hpp"
#include "tumorbif/quadrature.hpp"
#include "tumorbif/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tumorbif {

namespace {

void require_persistent(const ModelParams& params)
{
    const Regime r = classify(params);
    if (r.kind == RegimeKind::Extinction)
        throw RegimeError("no positive periodic orbit: sigma_tilde " + std::to_string(r.sigma_tilde)
                          + " >= mean nutrient " + std::to_string(r.phi_bar));
}

double period_map(const ModelParams& params, double rho0, double tol, double max_step)
{
    IntegrateOptions o;
    o.max_step = max_step;
    return integrate(params, rho0, params.period(), tol, o).final_value();
}

} // namespace

Bracket bracket(const ModelParams& params)
{
    params.validate();
    require_persistent(params);
    const auto& st = params.nutrient.stats();
    const double T = params.period();
    Bracket b;
    b.x2 = inverse_tanh_over_x(params.sigma_tilde / st.max);
    b.x_bar = inverse_tanh_over_x(params.sigma_tilde / st.mean)
        / std::exp(params.mu * (st.max - params.sigma_tilde) * T);
    return b;
}

double poincare_map(const ModelParams& params, double rho0, double tol)
{
    const double out = integrate(params, rho0, params.period(), tol).final_value();
    if (classify(params).kind == RegimeKind::PersistentPeriodic) {
        const Bracket b = bracket(params);
        if (rho0 >= b.x_bar && rho0 <= b.x2 && (out < b.x_bar - 1e-8 || out > b.x2 + 1e-8))
            throw std::logic_error("period map left its invariant interval");
    }
    return out;
}

double PeriodicOrbit::operator()(double t) const
{
    const double T = period();
    double r = std::fmod(t, T);
    if (r < 0.0)
        r += T;
    return (*trajectory)(r);
}

double PeriodicOrbit::derivative(double t) const
{
    return rhs(params, t, (*this)(t));
}

PeriodicOrbit find_periodic(const ModelParams& params, const FindOptions& opts)
{
    params.validate();
    require_persistent(params);
    if (opts.grid < 8)
        throw ConfigError("orbit grid needs at least 8 cells");

    const double T = params.period();
    const double max_step = T / opts.grid;
    const Bracket full = bracket(params);
    double lo = full.x_bar;
    double hi = full.x2;
    if (opts.search) {
        lo = std::max(lo, opts.search->x_bar);
        hi = std::min(hi, opts.search->x2);
        if (!(lo < hi))
            throw BracketError("search interval does not overlap the invariant bracket");
    }

    auto g = [&](double x) { return period_map(params, x, opts.tol, max_step) - x; };

    int evals = 0;
    double glo = g(lo);
    double ghi = g(hi);
    evals += 2;
    double best = std::fabs(glo) <= std::fabs(ghi) ? lo : hi;
    double gbest = std::min(std::fabs(glo), std::fabs(ghi));

    const auto target = [&](double x) { return 1e-13 * (1.0 + x); };

    if (glo * ghi > 0.0 && gbest >= opts.tol)
        throw BracketError("no sign change of F(x) - x on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");

    if (glo * ghi <= 0.0 && gbest > target(best)) {
        // bisection down to a narrow bracket, then safeguarded secant
        double xa = lo, ga = glo, xb = hi, gb = ghi;
        while (evals < opts.max_iterations) {
            double x;
            if (hi - lo > 1e-4 * (1.0 + hi)) {
                x = 0.5 * (lo + hi);
            } else {
                x = (ga != gb) ? xb - gb * (xb - xa) / (gb - ga) : 0.5 * (lo + hi);
                if (!(x > lo && x < hi))
                    x = 0.5 * (lo + hi);
            }
            const double gx = g(x);
            ++evals;
            if (std::fabs(gx) < gbest) {
                gbest = std::fabs(gx);
                best = x;
            }
            if (gx == 0.0 || gbest <= target(best))
                break;
            if ((gx < 0.0) == (glo < 0.0)) {
                lo = x;
                glo = gx;
            } else {
                hi = x;
                ghi = gx;
            }
            xa = xb;
            ga = gb;
            xb = x;
            gb = gx;
            if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi)
                break;
        }
    }

    PeriodicOrbit orbit;
    orbit.params = params;
    orbit.rho0_star = best;
    orbit.search_bracket = full;
    orbit.tol = opts.tol;
    orbit.iterations = evals;

    IntegrateOptions io;
    io.max_step = max_step;
    auto traj = std::make_shared<Trajectory>(integrate(params, best, T, opts.tol, io));
    orbit.residual = std::fabs(traj->final_value() - best);
    if (!(orbit.residual < 1e-10 * (1.0 + best)))
        throw ConvergenceError("periodic orbit residual " + std::to_string(orbit.residual)
                               + " above target after " + std::to_string(evals) + " map evaluations");
    orbit.trajectory = traj;

    const int N = opts.grid;
    orbit.grid.resize(N + 1);
    orbit.values.resize(N + 1);
    for (int i = 0; i <= N; ++i) {
        orbit.grid[i] = T * i / N;
        orbit.values[i] = (*traj)(orbit.grid[i]);
    }
    orbit.grid[N] = T;
    orbit.values[0] = best;
    orbit.values[N] = best;

    const GaussRule rule = gauss_legendre(PeriodicOrbit::kGaussPoints);
    orbit.nodes.reserve(static_cast<std::size_t>(N) * PeriodicOrbit::kGaussPoints);
    for (int i = 0; i < N; ++i) {
        const double a = orbit.grid[i];
        const double half = 0.5 * (orbit.grid[i + 1] - a);
        for (int k = 0; k < PeriodicOrbit::kGaussPoints; ++k) {
            OrbitNode nd;
            nd.t = a + half * (1.0 + rule.nodes[k]);
            nd.weight = half * rule.weights[k];
            nd.rho = (*traj)(nd.t);
            nd.phi = params.nutrient(nd.t);
            orbit.nodes.push_back(nd);
        }
    }

    auto lo_pt = scan_and_refine_min([&](double t) { return (*traj)(t); }, 0.0, T, N);
    auto hi_pt = scan_and_refine_min([&](double t) { return -(*traj)(t); }, 0.0, T, N);
    orbit.t_min = lo_pt.first;
    orbit.rho_min = lo_pt.second;
    orbit.t_max = hi_pt.first;
    orbit.rho_max = -hi_pt.second;
    return orbit;
}

AttractionEstimate attraction_rate(const PeriodicOrbit& orbit, double rho0, double horizon)
{
    if (!(rho0 > 0.0))
        throw DomainError("probe start must be positive");
    if (std::fabs(rho0 - orbit.rho0_star) < 1e-12)
        throw DegenerateStart("probe start coincides with the periodic orbit");
    const double T = orbit.period();
    if (!(horizon >= 10.0 * T * (1.0 - 1e-12)))
        throw DomainError("attraction horizon must cover at least 10 periods");

    const ModelParams& p = orbit.params;
    IntegrateOptions io;
    io.max_step = T / std::max(8, orbit.cells());
    const Trajectory traj = integrate(p, rho0, horizon, orbit.tol, io);

    AttractionEstimate est;
    const int K = static_cast<int>(std::floor(horizon / T + 1e-9));
    est.errors.reserve(K + 1);
    for (int k = 0; k <= K; ++k)
        est.errors.push_back(std::fabs(traj(std::min(k * T, horizon)) - orbit.rho0_star));

    // least squares of log error against time over the points above the noise floor
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    int n = 0;
    for (int k = 0; k <= K; ++k) {
        if (est.errors[k] <= kAttractionFitFloor)
            break;
        const double x = k * T;
        const double y = std::log(est.errors[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
        ++n;
    }
    est.points_used = n;
    if (n < 3)
        throw ConvergenceError("too few error samples above the noise floor to fit a decay rate");
    const double vxx = sxx - sx * sx / n;
    const double vxy = sxy - sx * sy / n;
    const double vyy = syy - sy * sy / n;
    est.slope = vxy / vxx;
    est.intercept = (sy - est.slope * sx) / n;
    est.r_squared = vyy > 0.0 ? vxy * vxy / (vxx * vyy) : 1.0;
    est.delta_empirical = -est.slope;

    const double y0 = std::log(rho0 / orbit.rho0_star);
    const double ey0 = std::exp(y0);
    auto neg_slope = [](double x) { return -tanh_over_x_derivative(x); };
    auto min_over = [&](double a, double b) {
        if (a > b)
            std::swap(a, b);
        if (b - a < 1e-14)
            return neg_slope(a);
        return scan_and_refine_min(neg_slope, a, b, 512).second;
    };
    est.m_min = min_over(orbit.rho_min, orbit.rho_max * ey0);
    est.m_bar_min = min_over(orbit.rho_min * ey0, orbit.rho_max);
    const double phi_low = p.nutrient.stats().min;
    est.delta_formula = std::min(p.mu * phi_low * est.m_min * orbit.rho_min,
                                 p.mu * phi_low * est.m_bar_min * orbit.rho_min * ey0);
    est.C = std::fabs(1.0 - ey0);
    return est;
}

double periodicity_defect(const PeriodicOrbit& orbit)
{
    const double T = orbit.period();
    IntegrateOptions io;
    io.max_step = T / std::max(8, orbit.cells());
    const Trajectory traj = integrate(orbit.params, orbit.rho0_star, 2.0 * T, orbit.tol, io);
    double worst = 0.0;
    for (double t : orbit.grid)
        worst = std::max(worst, std::fabs(traj(t + T) - traj(t)));
    return worst;
}

} // namespace tumorbif
