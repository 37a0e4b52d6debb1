#include "oracle_values.hpp"
#include "test_support.hpp"
#include "tumorbif/errors.hpp"
#include "tumorbif/hyperbolic.hpp"
#include "tumorbif/spectral.hpp"

#include <doctest.h>

#include <cmath>

using namespace tumorbif;
using testing_support::canonical_orbit;
using testing_support::constant_orbit;
using testing_support::rel_err;

TEST_CASE("k1 examples")
{
    const auto& orbit = canonical_orbit();
    CHECK(k1(orbit, 0.0) < 0);
    CHECK(rel_err(k1(orbit, 1.0), oracle::kK1CanonicalJ1) < 1e-8);
    CHECK(rel_err(k1(orbit, 5.0), oracle::kK1CanonicalJ5) < 1e-8);

    double limit = 0.0;
    for (const auto& nd : orbit.nodes)
        limit += nd.weight * nd.phi * (1 - tanh_over_x(nd.rho));
    CHECK(std::fabs(k1(orbit, 1e6) - limit) < 1e-3);

    CHECK(rel_err(k1(constant_orbit(), 4.0), oracle::kK1ConstantJ4) < 1e-10);
}

TEST_CASE("k1 is strictly increasing with one sign change")
{
    const auto& orbit = canonical_orbit();
    const double j0 = find_j0(orbit);
    for (int i = 0; i < 100; ++i) {
        const double j = 0.05 + 0.3 * i;
        CHECK(k1(orbit, j + 0.1) > k1(orbit, j));
        if (j < j0)
            CHECK(k1(orbit, j) < 0);
        else if (j > j0)
            CHECK(k1(orbit, j) > 0);
    }
}

TEST_CASE("k2 examples")
{
    CHECK(rel_err(k2(constant_orbit(), 4.0), 4 * std::tanh(2.0)) < 1e-10);
    CHECK(rel_err(k2(canonical_orbit(), 5.0), oracle::kK2CanonicalJ5) < 1e-9);
    // small j: tanh(sqrt(j) rho) ~ sqrt(j) rho, so k2 ~ j^2 int rho / 2
    const auto& orbit = canonical_orbit();
    double mean_rho = 0.0;
    for (const auto& nd : orbit.nodes)
        mean_rho += nd.weight * nd.rho;
    const double j = 1e-6;
    CHECK(rel_err(k2(orbit, j), 0.5 * j * j * mean_rho) < 1e-5);
    CHECK(k2(orbit, 0.3) > 0);
}

TEST_CASE("gamma examples")
{
    const auto& co = constant_orbit();
    CHECK(rel_err(gamma(co, 4.0).gamma_j, oracle::kK1ConstantJ4 / (4 * std::tanh(2.0))) < 1e-10);

    const auto& orbit = canonical_orbit();
    const double j0 = find_j0(orbit);
    CHECK(gamma(orbit, 0.5 * j0).gamma_j <= 0);
    CHECK(gamma(orbit, j0 + 0.5).gamma_j > 0);

    const auto one = gamma(orbit, 7.0, 1.0);
    const auto two = gamma(orbit, 7.0, 2.0);
    CHECK(std::fabs(two.gamma_j - 2 * one.gamma_j) < 1e-15 * std::fabs(one.gamma_j) + 1e-300);
    CHECK(one.gamma_j == one.k1 / one.k2);
    CHECK(one.orbit_ref.rfind("rho0*=", 0) == 0);
}

TEST_CASE("find_j0 examples")
{
    const double jc = find_j0(constant_orbit());
    CHECK(jc > 2);
    CHECK(jc < 3);
    CHECK(std::fabs(jc - oracle::kJ0Constant) < 1e-9);

    const auto& orbit = canonical_orbit();
    const double j0 = find_j0(orbit);
    CHECK(std::fabs(j0 - oracle::kJ0Canonical) < 1e-8);
    CHECK(k1(orbit, j0 - 1e-6) < 0);
    CHECK(k1(orbit, j0 + 1e-6) > 0);
}

TEST_CASE("A coefficient and kernel criterion")
{
    const auto& orbit = canonical_orbit();
    for (double j : {1.0, 2.0, 5.0, 13.0}) {
        const double g = gamma(orbit, j).gamma_j;
        const ModeCoefficient mc = A_coefficient(orbit, j, g);
        CHECK(mc.S_samples.front() == 1.0);
        CHECK(std::fabs(mc.integral_A) < 1e-10);
        CHECK(std::fabs(mc.S_period - 1.0) < 1e-8);
        for (double s : mc.S_samples)
            CHECK(s > 0);
        // off the bifurcation value
        for (double shift : {-0.1, 0.1}) {
            const ModeCoefficient off = A_coefficient(orbit, j, g + shift * std::fabs(g));
            CHECK(std::fabs(off.S_period - 1.0) > 1e-4);
        }
    }
}

TEST_CASE("integral of A is linear in gamma")
{
    const auto& orbit = canonical_orbit();
    const double j = 6.0;
    const double mu = orbit.params.mu;
    for (double g : {0.0, 0.3, -1.0}) {
        const ModeCoefficient mc = A_coefficient(orbit, j, g);
        CHECK(std::fabs(mc.integral_A - (-mu * k1(orbit, j) + g * k2(orbit, j))) < 1e-11);
    }
}

TEST_CASE("both displays of A agree along the orbit")
{
    const auto& orbit = canonical_orbit();
    const auto& p = orbit.params;
    for (double t : {0.0, 0.21, 0.5, 0.77}) {
        const double rho = orbit(t);
        const double a1 = A_value(p, 5.0, 0.2, t, rho);
        const double a2 = A_value_rewritten(p, 5.0, 0.2, t, rho, orbit.derivative(t));
        CHECK(std::fabs(a1 - a2) < 1e-10 * std::max(1.0, std::fabs(a1)));
    }
}

TEST_CASE("mode amplitude interpolates the sampled S")
{
    const auto& orbit = canonical_orbit();
    const ModeCoefficient mc = A_coefficient(orbit, 5.0, 0.1);
    for (std::size_t i : {0u, 100u, 257u, 512u})
        CHECK(rel_err(mode_amplitude(orbit, 5.0, 0.1, mc.times[i]), mc.S_samples[i]) < 1e-12);
}

TEST_CASE("monotonicity scan")
{
    const auto& orbit = canonical_orbit();
    const MonotonicityScan scan = monotonicity_scan(orbit, 500.0);
    CHECK(scan.sign_changes <= 1);
    CHECK(scan.js.size() == 200);
    CHECK(gamma(orbit, 1000.0).gamma_j < gamma(orbit, 500.0).gamma_j);
    CHECK(gamma(orbit, 1e5).gamma_j < 1e-2 * scan.max_gamma);
    if (scan.turning_point) {
        CHECK(*scan.turning_point > scan.j0);
        CHECK(*scan.turning_point < 500.0);
    }
}

TEST_CASE("tanh series check")
{
    const SeriesCheck s = tanh_series_check(1.0, 9999);
    CHECK(std::fabs(s.series - oracle::kTanhSeriesZ1K9999) < 1e-14);
    CHECK(std::fabs(s.exact - s.series) < 1e-3);
    CHECK(std::fabs(s.exact - s.series) < s.tail_bound);

    const SeriesCheck tiny = tanh_series_check(1e-9, 999);
    CHECK(std::fabs(tiny.exact) < 1e-8);
    CHECK(std::fabs(tiny.series) < 1e-8);

    double last = 0.0;
    for (int K : {1, 9, 99, 999}) {
        const double v = tanh_series_check(2.0, K).series;
        CHECK(v > last);
        CHECK(v < std::tanh(2.0));
        last = v;
    }
    CHECK_THROWS_AS(tanh_series_check(1.0, 10), DomainError);
    CHECK_THROWS_AS(tanh_series_check(-1.0, 11), DomainError);
}

TEST_CASE("series derivatives of k1 and k2")
{
    const auto& co = constant_orbit();
    const double j = 5.0;
    const double h = 1e-4;
    const KDerivatives d = dk_dj(co, j);
    const double fd1 = (k1(co, j + h) - k1(co, j - h)) / (2 * h);
    const double fd2 = (k2(co, j + h) - k2(co, j - h)) / (2 * h);
    CHECK(rel_err(d.dk1, fd1) < 1e-5);
    CHECK(rel_err(d.dk2, fd2) < 1e-5);

    const auto& orbit = canonical_orbit();
    for (double jj : {0.5, 3.0, 40.0}) {
        const KDerivatives dd = dk_dj(orbit, jj);
        CHECK(dd.dk1 > 0);
        double lower = 0.0;
        for (const auto& nd : orbit.nodes)
            lower += nd.weight * 0.5 * std::sqrt(jj) * std::tanh(std::sqrt(jj) * nd.rho);
        CHECK(dd.dk2 >= lower);
        const double g1 = (k1(orbit, jj + h) - k1(orbit, jj - h)) / (2 * h);
        CHECK(rel_err(dd.dk1, g1) < 1e-5);
    }
    CHECK_THROWS_AS(dk_dj(orbit, 1.0, 99), DomainError);
    CHECK_THROWS_AS(dk_dj(orbit, 1.0, 1000), DomainError);
}

TEST_CASE("parallel gamma table equals the serial one")
{
    const auto& orbit = canonical_orbit();
    std::vector<double> js;
    for (int j = 1; j <= 40; ++j)
        js.push_back(j * 0.75);
    const auto par = gamma_table(orbit, js);
    const auto ser = gamma_table_serial(orbit, js);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].j == ser[i].j);
        CHECK(par[i].gamma_j == ser[i].gamma_j);
    }
}

TEST_CASE("constant orbit gamma matches closed form")
{
    const auto& co = constant_orbit();
    for (int j = 1; j <= 50; ++j)
        CHECK(std::fabs(gamma(co, j).gamma_j - oracle::kGammaConstant[j - 1])
              < 1e-10 * std::max(1.0, std::fabs(oracle::kGammaConstant[j - 1])));
}
