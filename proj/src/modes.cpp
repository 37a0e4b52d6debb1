#include "tumorbif/modes.hpp"

#include "tumorbif/errors.hpp"
#include "tumorbif/hyperbolic.hpp"
#include "tumorbif/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tumorbif {

bool is_perfect_square(long v, long* root)
{
    if (v < 0)
        return false;
    long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(v))));
    while (r * r > v)
        --r;
    while ((r + 1) * (r + 1) <= v)
        ++r;
    if (root)
        *root = r;
    return r * r == v;
}

std::vector<Decomposition> decompose(long j)
{
    if (j < 1)
        throw DomainError("decompose needs j >= 1");
    std::vector<Decomposition> out;
    for (long m = 0; 2 * m * m <= j; ++m) {
        long n = 0;
        if (is_perfect_square(j - m * m, &n))
            out.push_back({static_cast<int>(n), static_cast<int>(m), j, true});
    }
    return out;
}

int alpha(long j)
{
    return static_cast<int>(decompose(j).size());
}

std::string to_string(BranchKind kind)
{
    return kind == BranchKind::Product ? "Product" : "PlusForm";
}

CollisionSet collision_set(const PeriodicOrbit& orbit, long j, long j_max, double tol_rel)
{
    CollisionSet out;
    const double j0 = find_j0(orbit);
    if (!(static_cast<double>(j) > j0)) {
        out.warning = "j = " + std::to_string(j) + " does not exceed j0";
        return out;
    }
    const double gj = gamma(orbit, static_cast<double>(j)).gamma_j;
    std::vector<double> candidates;
    for (long i = static_cast<long>(std::floor(j0)) + 1; i <= j_max; ++i)
        if (i != j && static_cast<double>(i) > j0)
            candidates.push_back(static_cast<double>(i));
    const auto rows = gamma_table(orbit, candidates);
    for (const auto& r : rows)
        if (std::fabs(r.gamma_j - gj) <= tol_rel * std::fabs(gj))
            out.partners.push_back(static_cast<long>(r.j));
    if (out.partners.size() > 1)
        out.warning = "ToleranceWarning: " + std::to_string(out.partners.size())
            + " indices share gamma_j within tolerance";
    return out;
}

BranchAtlas assemble_atlas(long j, double gamma_value, std::optional<long> partner)
{
    BranchAtlas atlas;
    atlas.j = j;
    atlas.gamma_value = gamma_value;
    atlas.collision_partner = partner;

    auto add_products = [&](long src, const std::string& rule) {
        for (const auto& d : decompose(src))
            atlas.branches.push_back({BranchKind::Product, d.n, d.m, src, rule});
    };
    auto add_plus = [&](long n, long src, const std::string& rule) {
        atlas.branches.push_back({BranchKind::PlusForm, static_cast<int>(n), static_cast<int>(n), src, rule});
    };

    long root = 0;
    if (!partner) {
        add_products(j, "alpha_j");
        if (is_perfect_square(j, &root))
            add_plus(root, j, "square_j");
        atlas.count_beta = alpha(j);
        atlas.count_case_a = atlas.count_beta;
    } else {
        const long j1 = std::min(j, *partner);
        const long j2 = std::max(j, *partner);
        long k = 0;
        const bool case_b = j2 % j1 == 0 && is_perfect_square(j2 / j1, &k) && k >= 2;
        atlas.count_beta = alpha(j2);
        if (case_b) {
            atlas.collision_case = "B";
            add_products(j2, "case_B");
            long n1 = 0;
            if (is_perfect_square(j1, &n1))
                add_plus(k * n1, j2, "case_B_square");
            atlas.count_case_a = atlas.count_beta;
        } else {
            atlas.collision_case = "A";
            add_products(j1, "case_A");
            add_products(j2, "case_A");
            long r1 = 0, r2 = 0;
            const bool sq1 = is_perfect_square(j1, &r1);
            const bool sq2 = is_perfect_square(j2, &r2);
            if (sq2)
                add_plus(r2, j2, "case_A_square");
            else if (sq1)
                add_plus(r1, j1, "case_A_square");
            atlas.count_case_a = alpha(j1) + alpha(j2);
        }
    }
    if (atlas.branches.empty())
        throw NotABifurcationValue("j = " + std::to_string(j) + " is not a sum of two squares"
                                   + (partner ? " and its collision partner contributes no branch" : ""));
    return atlas;
}

BranchAtlas branch_atlas(const PeriodicOrbit& orbit, long j, long j_max, double tol_rel)
{
    if (j < 1)
        throw DomainError("branch atlas needs j >= 1");
    const double j0 = find_j0(orbit);
    const auto rec = gamma(orbit, static_cast<double>(j));
    if (!(static_cast<double>(j) > j0) || !(rec.gamma_j > 0.0))
        throw NotABifurcationValue("j = " + std::to_string(j) + " does not exceed j0 = " + std::to_string(j0));
    const CollisionSet cs = collision_set(orbit, j, j_max, tol_rel);
    std::optional<long> partner;
    if (!cs.partners.empty())
        partner = cs.partners.front();
    BranchAtlas atlas = assemble_atlas(j, rec.gamma_j, partner);
    if (cs.warning)
        atlas.warnings.push_back(*cs.warning);
    return atlas;
}

namespace {

ModeProfile profile_for_index(const PeriodicOrbit& orbit, double j, double t, double y, double g)
{
    const double rho = orbit(t);
    if (!(y >= 0.0 && y <= rho))
        throw DomainError("depth y must lie in [0, rho*(t)]");
    const ModelParams& p = orbit.params;
    const double a = std::sqrt(1.0 + j);
    const double b = std::sqrt(j);
    const double phi = p.nutrient(t);
    const double th = std::tanh(rho);
    const double coef_a = p.mu * phi * th;
    const double coef_b = 0.5 * g * j - p.mu * p.sigma_tilde * rho;

    ModeProfile out;
    out.w = -phi * th * cosh_ratio(a * y, a * rho);
    out.q = coef_a * cosh_ratio(a * y, a * rho) + coef_b * cosh_ratio(b * y, b * rho);
    out.dq_dy_at_boundary = coef_a * a * std::tanh(a * rho) + coef_b * b * std::tanh(b * rho);
    return out;
}

} // namespace

ModeProfile mode_profiles(const PeriodicOrbit& orbit, int n, int m, double t, double y,
                          std::optional<double> gamma_opt)
{
    if (n < 0 || m < 0 || (n == 0 && m == 0))
        throw DomainError("mode (n, m) must be non-negative and not (0, 0)");
    const double j = double(n) * n + double(m) * m;
    return profile_for_index(orbit, j, t, y, gamma_opt.value_or(orbit.params.gamma));
}

namespace {

double kernel_residual_impl(const PeriodicOrbit& orbit, double j, double gamma)
{
    const ModelParams& p = orbit.params;
    const ModeCoefficient mc = A_coefficient(orbit, j, gamma);
    const double T = orbit.period();
    const double mean_A = mc.integral_A / T;
    double worst = 0.0;
    for (std::size_t i = 0; i < mc.times.size(); ++i) {
        const double t = mc.times[i];
        // periodic candidate and its derivative from the amplitude equation
        const double S = mc.S_samples[i] * std::exp(mean_A * t);
        const double dS = -(mc.A_samples[i] - mean_A) * S;
        const double p_yy = p.mu * p.sigma_tilde - p.mu * p.nutrient(t);
        const ModeProfile prof = profile_for_index(orbit, j, t, orbit(t), gamma);
        const double r = dS + p_yy * S + prof.dq_dy_at_boundary * S;
        worst = std::max(worst, std::fabs(r));
    }
    return worst;
}

} // namespace

double kernel_residual(const PeriodicOrbit& orbit, long j, double gamma)
{
    if (j < 1)
        throw DomainError("kernel residual needs j >= 1");
    return kernel_residual_impl(orbit, static_cast<double>(j), gamma);
}

double kernel_residual(const PeriodicOrbit& orbit, int n, int m, double gamma)
{
    if (n < 0 || m < 0 || (n == 0 && m == 0))
        throw DomainError("mode (n, m) must be non-negative and not (0, 0)");
    return kernel_residual_impl(orbit, double(n) * n + double(m) * m, gamma);
}

double shape_value(const Branch& branch, double x1, double x2)
{
    if (branch.kind == BranchKind::Product)
        return std::cos(branch.n * x1) * std::cos(branch.m * x2);
    return std::cos(branch.n * x1) + std::cos(branch.n * x2);
}

namespace {

SurfaceSample surface_setup(const PeriodicOrbit& orbit, const BranchAtlas& atlas, int branch_index,
                            double epsilon, int nx, int nt)
{
    if (branch_index < 0 || branch_index >= static_cast<int>(atlas.branches.size()))
        throw DomainError("branch index out of range");
    if (nx < 8 || nt < 8)
        throw DomainError("surface grids need nx, nt >= 8");
    if (!std::isfinite(epsilon) || std::fabs(epsilon) > 0.1 * orbit.rho_min)
        throw AmplitudeTooLarge("epsilon exceeds 0.1 * rho_min = " + std::to_string(0.1 * orbit.rho_min));
    SurfaceSample s;
    s.branch = atlas.branches[branch_index];
    s.epsilon = epsilon;
    s.gamma = atlas.gamma_value;
    s.nx = nx;
    s.nt = nt;
    const double T = orbit.period();
    s.times.resize(nt);
    for (int k = 0; k < nt; ++k)
        s.times[k] = T * k / (nt - 1);
    s.x.resize(nx);
    for (int i = 0; i < nx; ++i)
        s.x[i] = 2.0 * std::numbers::pi * i / nx;
    s.rho_star.resize(nt);
    s.amplitude.resize(nt);
    s.heights.resize(static_cast<std::size_t>(nt) * nx * nx);
    return s;
}

void fill_slice(const PeriodicOrbit& orbit, SurfaceSample& s, int k)
{
    const double T = orbit.period();
    double tr = std::fmod(s.times[k], T);
    if (tr < 0.0)
        tr += T;
    const double rho = orbit(tr);
    const double S = mode_amplitude(orbit, static_cast<double>(s.branch.source_j), s.gamma, tr);
    s.rho_star[k] = rho;
    s.amplitude[k] = S;
    for (int i1 = 0; i1 < s.nx; ++i1)
        for (int i2 = 0; i2 < s.nx; ++i2)
            s.heights[(static_cast<std::size_t>(k) * s.nx + i1) * s.nx + i2]
                = rho + s.epsilon * S * shape_value(s.branch, s.x[i1], s.x[i2]);
}

void check_positive(const SurfaceSample& s)
{
    for (double h : s.heights)
        if (!(h > 0.0))
            throw AmplitudeTooLarge("first-order surface is not positive for this epsilon");
}

} // namespace

SurfaceSample sample_surface(const PeriodicOrbit& orbit, const BranchAtlas& atlas, int branch_index,
                             double epsilon, int nx, int nt)
{
    SurfaceSample s = surface_setup(orbit, atlas, branch_index, epsilon, nx, nt);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < nt; ++k)
        fill_slice(orbit, s, k);
    check_positive(s);
    return s;
}

SurfaceSample sample_surface_serial(const PeriodicOrbit& orbit, const BranchAtlas& atlas,
                                    int branch_index, double epsilon, int nx, int nt)
{
    SurfaceSample s = surface_setup(orbit, atlas, branch_index, epsilon, nx, nt);
    for (int k = 0; k < nt; ++k)
        fill_slice(orbit, s, k);
    check_positive(s);
    return s;
}

} // namespace tumorbif
