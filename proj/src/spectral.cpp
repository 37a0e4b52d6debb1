#include "tumorbif/spectral.hpp"

#include "tumorbif/errors.hpp"
#include "tumorbif/hyperbolic.hpp"
#include "tumorbif/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace tumorbif {

namespace {

void require_positive_j(double j)
{
    if (!(j > 0.0) || !std::isfinite(j))
        throw DomainError("mode index j must be positive");
}

std::string orbit_id(const PeriodicOrbit& orbit)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "rho0*=%.17g", orbit.rho0_star);
    return buf;
}

double k1_integrand(double j, double rho, double phi)
{
    return phi * (1.0 - tanh_over_x(rho) - std::tanh(rho) * tanh_gap(j, rho));
}

double k2_integrand(double j, double rho)
{
    return 0.5 * j * std::sqrt(j) * std::tanh(std::sqrt(j) * rho);
}

} // namespace

double k1(const PeriodicOrbit& orbit, double j)
{
    if (!(j >= 0.0))
        throw DomainError("k1 needs j >= 0");
    double sum = 0.0;
    for (const auto& nd : orbit.nodes)
        sum += nd.weight * k1_integrand(j, nd.rho, nd.phi);
    return sum;
}

double k2(const PeriodicOrbit& orbit, double j)
{
    require_positive_j(j);
    double sum = 0.0;
    for (const auto& nd : orbit.nodes)
        sum += nd.weight * k2_integrand(j, nd.rho);
    return sum;
}

BifurcationRecord gamma(const PeriodicOrbit& orbit, double j)
{
    return gamma(orbit, j, orbit.params.mu);
}

BifurcationRecord gamma(const PeriodicOrbit& orbit, double j, double mu)
{
    require_positive_j(j);
    BifurcationRecord rec;
    rec.j = j;
    rec.k1 = k1(orbit, j);
    rec.k2 = k2(orbit, j);
    rec.gamma_j = mu * rec.k1 / rec.k2;
    rec.orbit_ref = orbit_id(orbit);
    return rec;
}

double find_j0(const PeriodicOrbit& orbit)
{
    const double at_zero = k1(orbit, 0.0);
    if (at_zero >= 0.0)
        throw BracketError("k1(0) is not negative; the orbit is not a persistent periodic orbit");
    double lo = 0.0;
    double hi = 16.0;
    while (k1(orbit, hi) <= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12)
            throw BracketError("k1 stays non-positive up to j = 1e12");
    }
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (k1(orbit, mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double A_value(const ModelParams& params, double j, double gamma, double t, double rho)
{
    const double a = std::sqrt(1.0 + j);
    const double b = std::sqrt(j);
    const double mu = params.mu;
    const double s = params.sigma_tilde;
    const double phi = params.nutrient(t);
    const double tb = std::tanh(b * rho);
    return mu * s - mu * phi + mu * phi * std::tanh(rho) * a * std::tanh(a * rho)
        - mu * s * rho * b * tb + 0.5 * gamma * j * b * tb;
}

double A_value_rewritten(const ModelParams& params, double j, double gamma, double t, double rho,
                         double rho_prime)
{
    const double a = std::sqrt(1.0 + j);
    const double b = std::sqrt(j);
    const double mu = params.mu;
    const double phi = params.nutrient(t);
    const double th = std::tanh(rho);
    const double tb = std::tanh(b * rho);
    return mu * phi * tanh_over_x(rho) - rho_prime / rho - mu * phi
        + mu * phi * th * a * std::tanh(a * rho) - mu * phi * th * b * tb
        + rho_prime * b * tb + 0.5 * gamma * j * b * tb;
}

ModeCoefficient A_coefficient(const PeriodicOrbit& orbit, double j, double gamma)
{
    require_positive_j(j);
    const ModelParams& p = orbit.params;
    ModeCoefficient mc;
    mc.j = j;
    mc.gamma = gamma;
    mc.times = orbit.grid;
    const int N = orbit.cells();
    mc.A_samples.resize(N + 1);
    mc.S_samples.resize(N + 1);
    for (int i = 0; i <= N; ++i)
        mc.A_samples[i] = A_value(p, j, gamma, orbit.grid[i], orbit.values[i]);

    constexpr int G = PeriodicOrbit::kGaussPoints;
    double cumulative = 0.0;
    mc.S_samples[0] = 1.0;
    for (int i = 0; i < N; ++i) {
        double cell = 0.0;
        for (int k = 0; k < G; ++k) {
            const auto& nd = orbit.nodes[static_cast<std::size_t>(i) * G + k];
            cell += nd.weight * A_value(p, j, gamma, nd.t, nd.rho);
        }
        cumulative += cell;
        mc.S_samples[i + 1] = std::exp(-cumulative);
    }
    mc.integral_A = cumulative;
    mc.S_period = mc.S_samples[N];
    return mc;
}

double mode_amplitude(const PeriodicOrbit& orbit, double j, double gamma, double t)
{
    require_positive_j(j);
    const double T = orbit.period();
    if (!(t >= 0.0 && t <= T * (1.0 + 1e-12)))
        throw DomainError("mode amplitude is tabulated on [0, T]");
    t = std::min(t, T);
    const ModelParams& p = orbit.params;
    constexpr int G = PeriodicOrbit::kGaussPoints;
    const int N = orbit.cells();
    const double h = T / N;
    const int full = std::min(N, static_cast<int>(t / h));
    double integral = 0.0;
    for (int i = 0; i < full; ++i)
        for (int k = 0; k < G; ++k) {
            const auto& nd = orbit.nodes[static_cast<std::size_t>(i) * G + k];
            integral += nd.weight * A_value(p, j, gamma, nd.t, nd.rho);
        }
    const double a = orbit.grid[full];
    if (t > a) {
        static const GaussRule rule = gauss_legendre(G);
        const double half = 0.5 * (t - a);
        for (int k = 0; k < G; ++k) {
            const double s = a + half * (1.0 + rule.nodes[k]);
            integral += half * rule.weights[k] * A_value(p, j, gamma, s, orbit(s));
        }
    }
    return std::exp(-integral);
}

MonotonicityScan monotonicity_scan(const PeriodicOrbit& orbit, double j_max)
{
    MonotonicityScan scan;
    scan.j0 = find_j0(orbit);
    if (!(j_max > scan.j0))
        throw DomainError("scan limit must exceed j0");
    constexpr int points = 200;
    const double ratio = j_max / scan.j0;
    auto g = [&](double j) { return gamma(orbit, j).gamma_j; };
    auto dg = [&](double j) {
        const double h = 1e-4 * std::max(1.0, j);
        return (g(j + h) - g(j - h)) / (2.0 * h);
    };
    scan.js.resize(points);
    scan.gammas.resize(points);
    scan.derivatives.resize(points);
    for (int i = 0; i < points; ++i) {
        const double j = i + 1 == points ? j_max : scan.j0 * std::pow(ratio, (i + 1.0) / points);
        scan.js[i] = j;
        scan.gammas[i] = g(j);
        scan.derivatives[i] = dg(j);
    }
    scan.max_gamma = *std::max_element(scan.gammas.begin(), scan.gammas.end());

    int last_sign = 0;
    int last_index = -1;
    for (int i = 0; i < points; ++i) {
        const double d = scan.derivatives[i];
        const int sgn = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
        if (sgn == 0)
            continue;
        if (last_sign != 0 && sgn != last_sign) {
            ++scan.sign_changes;
            if (!scan.turning_point) {
                double lo = scan.js[last_index];
                double hi = scan.js[i];
                const double dlo_sign = last_sign;
                for (int it = 0; it < 80 && hi - lo > 1e-10 * hi; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (dg(mid) * dlo_sign > 0.0)
                        lo = mid;
                    else
                        hi = mid;
                }
                scan.turning_point = 0.5 * (lo + hi);
            }
        }
        last_sign = sgn;
        last_index = i;
    }
    return scan;
}

SeriesCheck tanh_series_check(double z, int K)
{
    if (!(z > 0.0))
        throw DomainError("series check needs z > 0");
    if (K < 1 || K % 2 == 0)
        throw DomainError("truncation K must be a positive odd integer");
    SeriesCheck out;
    out.exact = std::tanh(z);
    const double z2 = z * z;
    double sum = 0.0;
    for (int k = K; k >= 1; k -= 2) {
        const double c = 0.5 * k * std::numbers::pi;
        sum += 1.0 / (c * c + z2);
    }
    out.series = 2.0 * z * sum;
    out.tail_bound = 8.0 * z / (std::numbers::pi * std::numbers::pi * K);
    return out;
}

KDerivatives dk_dj(const PeriodicOrbit& orbit, double j, int K)
{
    require_positive_j(j);
    if (K < 999 || K % 2 == 0)
        throw DomainError("dk_dj needs an odd truncation K >= 999");
    const double sj = std::sqrt(j);
    KDerivatives out;
    for (const auto& nd : orbit.nodes) {
        const double rho = nd.rho;
        const double alpha = 0.5 * std::numbers::pi / rho; // c_k = (alpha k)^2
        double s1 = 0.0, s2a = 0.0, s2b = 0.0;
        for (int k = K; k >= 1; k -= 2) {
            const double c = alpha * alpha * double(k) * double(k);
            const double cj = c + j;
            const double cj1 = cj + 1.0;
            s1 += c * (2.0 * c + 2.0 * j + 1.0) / (cj1 * cj1 * cj * cj);
            s2a += 2.0 * j / cj;
            s2b += j * j / (cj * cj);
        }
        // odd k > K stand for the continuum beyond K + 1 with density 1/2
        const double L = K + 1.0;
        const double u = alpha * L / sj;
        const double atail = std::numbers::pi / 2 - std::atan(u);
        s2a += 0.5 * (2.0 * sj / alpha) * atail;
        s2b += 0.5 * j * j / (2.0 * j)
            * (atail / (alpha * sj) - L / (alpha * alpha * L * L + j));
        out.dk1 += nd.weight * 2.0 * nd.phi * tanh_over_x(rho) * s1;
        out.dk2 += nd.weight * (s2a - s2b) / rho;
    }
    return out;
}

std::vector<BifurcationRecord> gamma_table(const PeriodicOrbit& orbit, const std::vector<double>& js)
{
    for (double j : js)
        require_positive_j(j);
    std::vector<BifurcationRecord> rows(js.size());
    const long n = static_cast<long>(js.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i)
        rows[i] = gamma(orbit, js[i]);
    return rows;
}

std::vector<BifurcationRecord> gamma_table_serial(const PeriodicOrbit& orbit, const std::vector<double>& js)
{
    std::vector<BifurcationRecord> rows;
    rows.reserve(js.size());
    for (double j : js)
        rows.push_back(gamma(orbit, j));
    return rows;
}

} // namespace tumorbif
