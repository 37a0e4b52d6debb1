// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include "oracle_values.hpp"
#include "tumorbif/errors.hpp"
#include "tumorbif/flat_dynamics.hpp"
#include "tumorbif/modes.hpp"
#include "tumorbif/periodic_solver.hpp"
#include "tumorbif/spectral.hpp"
#include "tumorbif/verification.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace tumorbif;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

ModelParams canonical()
{
    ModelParams p;
    p.mu = 1.0;
    p.sigma_tilde = 0.5;
    p.nutrient = PeriodicNutrient::fourier(1.0, 1.0, {{1, 0.25, 0.0}});
    return p;
}

const PeriodicOrbit& canonical_orbit()
{
    static const PeriodicOrbit orbit = find_periodic(canonical());
    return orbit;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// random two-harmonic nutrient with mean phi_bar and amplitude below 0.3 phi_bar
PeriodicNutrient random_nutrient(std::mt19937_64& rng, double period, double phi_bar)
{
    std::uniform_real_distribution<double> amp(-0.1, 0.1);
    return PeriodicNutrient::fourier(period, phi_bar,
                                     {{1, amp(rng) * phi_bar, amp(rng) * phi_bar},
                                      {2, amp(rng) * phi_bar * 0.5, amp(rng) * phi_bar * 0.5}});
}

Outcome extinction_dichotomy()
{
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto in = [&](double a, double b) { return a + (b - a) * u(rng); };
    Outcome o;
    double worst_ext = 0.0;
    for (int i = 0; i < 20; ++i) {
        ModelParams p;
        p.mu = in(1.0, 2.0);
        const double T = in(1.0, 2.0);
        const double phi_bar = in(0.8, 1.5);
        p.nutrient = random_nutrient(rng, T, phi_bar);
        p.sigma_tilde = in(1.25, 2.0) * phi_bar;
        const double rho0 = in(0.2, 5.0);
        const double ratio = integrate(p, rho0, 40 * T, 1e-10).final_value() / rho0;
        worst_ext = std::max(worst_ext, ratio);
        if (!(ratio < 1e-3))
            o.passed = false;
    }
    int inside = 0;
    for (int i = 0; i < 20; ++i) {
        ModelParams p;
        p.mu = in(1.0, 2.0);
        const double T = in(1.0, 2.0);
        const double phi_bar = in(0.8, 1.5);
        p.nutrient = random_nutrient(rng, T, phi_bar);
        p.sigma_tilde = in(0.2, 0.8) * phi_bar;
        const double rho0 = in(0.2, 5.0);
        const Bracket b = bracket(p);
        const double r = integrate(p, rho0, 40 * T, 1e-10).final_value();
        if (r >= 0.5 * b.x_bar && r <= 2 * b.x2)
            ++inside;
        else
            o.passed = false;
    }
    o.detail = fmt("max rho(40T)/rho0 under extinction %.3g; %g/20 persistent runs in [x_bar/2, 2 x2]", worst_ext,
                   inside);
    return o;
}

Outcome periodic_orbit()
{
    const ModelParams p = canonical();
    const PeriodicOrbit& orbit = canonical_orbit();
    const double defect = periodicity_defect(orbit);
    const Bracket b = bracket(p);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 0.99);
    double spread = 0.0;
    for (int i = 0; i < 8; ++i) {
        FindOptions fo;
        fo.search = Bracket{b.x_bar + u(rng) * (orbit.rho0_star - b.x_bar), b.x2 - u(rng) * (b.x2 - orbit.rho0_star)};
        spread = std::max(spread, std::fabs(find_periodic(p, fo).rho0_star - orbit.rho0_star));
    }
    Outcome o;
    o.passed = orbit.residual < 1e-10 && defect < 1e-9 && spread < 1e-9;
    o.detail = fmt("residual %.2e, periodicity defect %.2e, sub-bracket spread %.2e", orbit.residual, defect, spread);
    return o;
}

Outcome attraction()
{
    const PeriodicOrbit& orbit = canonical_orbit();
    const AttractionEstimate est = attraction_rate(orbit, 3.0, 30.0 * orbit.period());
    Outcome o;
    o.passed = est.r_squared > 0.999 && est.slope <= -est.delta_formula + 1e-6;
    o.detail = fmt("R^2 %.6f, slope %.5f, delta_formula %.5f", est.r_squared, est.slope, est.delta_formula);
    return o;
}

Outcome kernel_criterion()
{
    const PeriodicOrbit& orbit = canonical_orbit();
    const double j0 = find_j0(orbit);
    double worst_on = 0.0;
    double worst_off = INFINITY;
    int tested = 0;
    for (long j = static_cast<long>(std::floor(j0)) + 1; j <= j0 + 20; ++j) {
        if (alpha(j) == 0)
            continue;
        const double g = gamma(orbit, double(j)).gamma_j;
        worst_on = std::max(worst_on, std::fabs(A_coefficient(orbit, double(j), g).S_period - 1.0));
        worst_off = std::min(worst_off, std::fabs(A_coefficient(orbit, double(j), 1.1 * g).S_period - 1.0));
        ++tested;
    }
    Outcome o;
    o.passed = tested > 0 && worst_on < 1e-8 && worst_off > 1e-4;
    o.detail = fmt("%g indices, max |S(T)-1| at gamma_j %.2e, min at 1.1 gamma_j %.2e", tested, worst_on, worst_off);
    return o;
}

Outcome gamma_structure()
{
    const PeriodicOrbit& orbit = canonical_orbit();
    const double j0 = find_j0(orbit);
    bool increasing = true;
    int k1_sign_changes = 0;
    double prev = k1(orbit, 0.0);
    for (int i = 1; i <= 100; ++i) {
        const double j = 0.2 * i;
        const double cur = k1(orbit, j);
        increasing = increasing && cur > prev;
        if ((cur > 0) != (prev > 0))
            ++k1_sign_changes;
        prev = cur;
    }
    const MonotonicityScan scan = monotonicity_scan(orbit, 500.0);
    const double far = gamma(orbit, 1e5).gamma_j;
    Outcome o;
    o.passed = increasing && k1_sign_changes == 1 && scan.sign_changes <= 1 && far < 1e-2 * scan.max_gamma;
    o.detail = fmt("j0 %.6f, dgamma/dj sign changes %g, gamma(1e5)/max %.2e", j0, scan.sign_changes,
                   far / scan.max_gamma);
    if (!increasing || k1_sign_changes != 1)
        o.detail += "; k1 not monotone with a single root";
    return o;
}

Outcome constant_degeneration()
{
    ModelParams p;
    p.mu = 1.0;
    p.sigma_tilde = std::tanh(1.0);
    p.nutrient = PeriodicNutrient::constant(1.0);
    const PeriodicOrbit orbit = find_periodic(p);
    double orbit_dev = 0.0;
    for (double v : orbit.values)
        orbit_dev = std::max(orbit_dev, std::fabs(v - 1.0));
    double gamma_dev = 0.0;
    for (int j = 1; j <= 50; ++j)
        gamma_dev = std::max(gamma_dev, std::fabs(gamma(orbit, j).gamma_j - oracle::kGammaConstant[j - 1]));
    Outcome o;
    o.passed = orbit_dev < 1e-9 && gamma_dev < 1e-10;
    o.detail = fmt("max |rho*-1| %.2e, max |gamma_j - closed form| %.2e", orbit_dev, gamma_dev);
    return o;
}

Outcome mode_bvp()
{
    const PeriodicOrbit& orbit = canonical_orbit();
    const int modes[3][2] = {{1, 0}, {2, 1}, {3, 2}};
    double worst = 0.0;
    double min_order = INFINITY;
    for (const auto& nm : modes) {
        const double j = nm[0] * nm[0] + nm[1] * nm[1];
        const double g = gamma(orbit, j).gamma_j;
        for (int k = 0; k < 8; ++k) {
            const double t = orbit.period() * k / 8.0;
            const BvpModeResult fd = bvp_mode_solve(orbit, nm[0], nm[1], t, 10000, g);
            const double closed = mode_profiles(orbit, nm[0], nm[1], t, orbit(t), g).dq_dy_at_boundary;
            worst = std::max(worst, std::fabs(fd.dq_dy - closed) / std::max(1.0, std::fabs(closed)));
            min_order = std::min(min_order, fd.observed_order);
        }
    }
    Outcome o;
    o.passed = worst < 1e-6 && min_order >= 1.8;
    o.detail = fmt("max deviation %.2e, min observed order %.3f", worst, min_order);
    return o;
}

Outcome series_identity()
{
    Outcome o;
    double worst_ratio = 0.0;
    for (double z : {0.5, 1.0, 3.0, 10.0})
        for (int K : {99, 999, 9999}) {
            const SeriesCheck s = tanh_series_check(z, K);
            const double err = std::fabs(s.exact - s.series);
            worst_ratio = std::max(worst_ratio, err / s.tail_bound);
            if (!(err < s.tail_bound))
                o.passed = false;
        }
    o.detail = fmt("max error / tail bound %.4f over 12 cases", worst_ratio);
    return o;
}

Outcome branch_combinatorics()
{
    Outcome o;
    int mismatches = 0;
    for (long j = 1; j <= 10000; ++j) {
        int brute = 0;
        for (long n = 0; n * n <= j; ++n)
            for (long m = 0; m <= n; ++m)
                if (n * n + m * m == j)
                    ++brute;
        if (brute != alpha(j))
            ++mismatches;
    }
    const PeriodicOrbit& orbit = canonical_orbit();
    auto same = [](const BranchAtlas& a, const std::vector<Branch>& want) {
        if (a.branches.size() != want.size())
            return false;
        for (std::size_t i = 0; i < want.size(); ++i)
            if (a.branches[i].kind != want[i].kind || a.branches[i].n != want[i].n || a.branches[i].m != want[i].m)
                return false;
        return true;
    };
    const bool ok4 = same(branch_atlas(orbit, 4, 500), {{BranchKind::Product, 2, 0}, {BranchKind::PlusForm, 2, 2}});
    const bool ok5 = same(branch_atlas(orbit, 5, 500), {{BranchKind::Product, 2, 1}});
    const bool ok25 = same(branch_atlas(orbit, 25, 500),
                           {{BranchKind::Product, 5, 0}, {BranchKind::Product, 4, 3}, {BranchKind::PlusForm, 5, 5}});
    const BranchAtlas case_b = assemble_atlas(1, 0.0, 4);
    const bool okb = case_b.collision_case == "B"
        && same(case_b, {{BranchKind::Product, 2, 0}, {BranchKind::PlusForm, 2, 2}});
    o.passed = mismatches == 0 && ok4 && ok5 && ok25 && okb;
    o.detail = fmt("alpha mismatches up to 1e4: %g; atlas j=4,5,25 ", mismatches)
        + (ok4 && ok5 && ok25 ? "match" : "MISMATCH") + "; case B (1,4) " + (okb ? "match" : "MISMATCH");
    return o;
}

Outcome dual_formula()
{
    const PeriodicOrbit& orbit = canonical_orbit();
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> jd(0.5, 60.0);
    std::uniform_real_distribution<double> gd(-1.0, 1.0);
    Outcome o;
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const OracleReport r = dual_formula_A(orbit, jd(rng), gd(rng));
        worst = std::max(worst, r.rel_diff);
        o.passed = o.passed && r.passed;
    }
    o.detail = fmt("max pointwise relative difference %.2e over 10 pairs", worst);
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"extinction dichotomy", extinction_dichotomy},
        {"periodic orbit", periodic_orbit},
        {"exponential attraction", attraction},
        {"kernel criterion", kernel_criterion},
        {"gamma_j structure", gamma_structure},
        {"constant nutrient degeneration", constant_degeneration},
        {"mode BVP oracle", mode_bvp},
        {"tanh series identity", series_identity},
        {"branch combinatorics", branch_combinatorics},
        {"dual formula agreement", dual_formula},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.passed = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2zu %-32s %s (%.1fs)\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += o.passed ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
