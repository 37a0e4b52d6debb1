#include "tumorbif/nutrient.hpp"

#include "tumorbif/errors.hpp"
#include "tumorbif/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace tumorbif {

namespace {

// Solves the cyclic system M_{i-1} + 4 M_i + M_{i+1} = rhs_i (indices mod n)
// with Sherman-Morrison on top of a Thomas sweep.
std::vector<double> solve_cyclic_spline(const std::vector<double>& rhs)
{
    const std::size_t n = rhs.size();
    const double alpha = 1.0; // corner entries
    const double beta = 1.0;
    const double gamma = -4.0;

    std::vector<double> diag(n, 4.0);
    diag[0] = 4.0 - gamma;
    diag[n - 1] = 4.0 - alpha * beta / gamma;

    auto thomas = [&](std::vector<double> d) {
        std::vector<double> c(n, 0.0);
        c[0] = 1.0 / diag[0];
        d[0] /= diag[0];
        for (std::size_t i = 1; i < n; ++i) {
            const double m = diag[i] - c[i - 1];
            c[i] = 1.0 / m;
            d[i] = (d[i] - d[i - 1]) / m;
        }
        for (std::size_t i = n - 1; i-- > 0;)
            d[i] -= c[i] * d[i + 1];
        return d;
    };

    std::vector<double> x = thomas(rhs);
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = alpha;
    std::vector<double> z = thomas(u);
    const double fact = (x[0] + beta * x[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
    for (std::size_t i = 0; i < n; ++i)
        x[i] -= fact * z[i];
    return x;
}

} // namespace

PeriodicNutrient PeriodicNutrient::constant(double value, double period)
{
    return fourier(period, value, {});
}

PeriodicNutrient PeriodicNutrient::fourier(double period, double mean, std::vector<Harmonic> harmonics)
{
    if (!(period > 0.0) || !std::isfinite(period))
        throw ConfigError("nutrient period must be positive and finite");
    if (!std::isfinite(mean))
        throw ConfigError("nutrient mean must be finite");
    for (const auto& h : harmonics) {
        if (h.k < 1)
            throw ConfigError("harmonic index must be >= 1, got " + std::to_string(h.k));
        if (!std::isfinite(h.cos_amp) || !std::isfinite(h.sin_amp))
            throw ConfigError("harmonic amplitudes must be finite");
    }
    PeriodicNutrient nut;
    nut.period_ = period;
    nut.mean_ = mean;
    nut.harmonics_ = std::move(harmonics);
    nut.finalize();
    return nut;
}

PeriodicNutrient PeriodicNutrient::tabulated(double period, std::vector<std::pair<double, double>> samples)
{
    if (!(period > 0.0) || !std::isfinite(period))
        throw ConfigError("nutrient period must be positive and finite");
    if (samples.size() >= 2) {
        const double span = samples.back().first - samples.front().first;
        if (std::fabs(span - period) <= 1e-9 * period) {
            if (std::fabs(samples.back().second - samples.front().second) > 1e-12 * std::fabs(samples.front().second))
                throw ConfigError("tabulated nutrient endpoint sample does not repeat the first value");
            samples.pop_back();
        }
    }
    const std::size_t n = samples.size();
    if (n < 4)
        throw ConfigError("tabulated nutrient needs at least 4 samples per period");
    const double h = period / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double expected = samples.front().first + static_cast<double>(i) * h;
        if (std::fabs(samples[i].first - expected) > 1e-9 * period)
            throw ConfigError("tabulated nutrient samples must lie on a uniform grid covering one period");
        if (!std::isfinite(samples[i].second))
            throw ConfigError("tabulated nutrient values must be finite");
    }

    PeriodicNutrient nut;
    nut.period_ = period;
    nut.t0_ = samples.front().first;
    nut.h_ = h;
    nut.values_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        nut.values_[i] = samples[i].second;

    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double prev = nut.values_[(i + n - 1) % n];
        const double next = nut.values_[(i + 1) % n];
        rhs[i] = 6.0 * (next - 2.0 * nut.values_[i] + prev) / (h * h);
    }
    nut.second_derivs_ = solve_cyclic_spline(rhs);

    // The periodic spline integrates to h * sum(v_i): its second derivatives sum to zero.
    double sum = 0.0;
    for (double v : nut.values_)
        sum += v;
    nut.mean_ = sum / static_cast<double>(n);
    nut.finalize();
    return nut;
}

std::vector<std::pair<double, double>> PeriodicNutrient::samples() const
{
    std::vector<std::pair<double, double>> out;
    out.reserve(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i)
        out.emplace_back(t0_ + static_cast<double>(i) * h_, values_[i]);
    return out;
}

double PeriodicNutrient::reduce(double t) const
{
    double r = std::fmod(t, period_);
    if (r < 0.0)
        r += period_;
    return r;
}

double PeriodicNutrient::operator()(double t) const
{
    if (values_.empty()) {
        const double w = 2.0 * std::numbers::pi * reduce(t) / period_;
        double v = mean_;
        for (const auto& h : harmonics_)
            v += h.cos_amp * std::cos(h.k * w) + h.sin_amp * std::sin(h.k * w);
        return v;
    }
    double s = reduce(t - t0_) / h_;
    const std::size_t n = values_.size();
    std::size_t i = static_cast<std::size_t>(s);
    if (i >= n)
        i = n - 1;
    const double b = s - static_cast<double>(i);
    const double a = 1.0 - b;
    const std::size_t i1 = (i + 1) % n;
    const double h2 = h_ * h_ / 6.0;
    return a * values_[i] + b * values_[i1]
        + ((a * a * a - a) * second_derivs_[i] + (b * b * b - b) * second_derivs_[i1]) * h2;
}

double PeriodicNutrient::derivative(double t) const
{
    if (values_.empty()) {
        const double omega = 2.0 * std::numbers::pi / period_;
        const double w = omega * reduce(t);
        double v = 0.0;
        for (const auto& h : harmonics_)
            v += h.k * omega * (-h.cos_amp * std::sin(h.k * w) + h.sin_amp * std::cos(h.k * w));
        return v;
    }
    double s = reduce(t - t0_) / h_;
    const std::size_t n = values_.size();
    std::size_t i = static_cast<std::size_t>(s);
    if (i >= n)
        i = n - 1;
    const double b = s - static_cast<double>(i);
    const double a = 1.0 - b;
    const std::size_t i1 = (i + 1) % n;
    return (values_[i1] - values_[i]) / h_
        + h_ / 6.0 * (-(3.0 * a * a - 1.0) * second_derivs_[i] + (3.0 * b * b - 1.0) * second_derivs_[i1]);
}

void PeriodicNutrient::finalize()
{
    double grid_min = (*this)(0.0);
    for (int i = 1; i < kPositivityGrid; ++i)
        grid_min = std::min(grid_min, (*this)(period_ * i / kPositivityGrid));
    if (!(grid_min > 0.0))
        throw PositivityViolation("nutrient is not positive: grid minimum " + std::to_string(grid_min));
    stats_ = statistics(*this);
}

NutrientStats statistics(const PeriodicNutrient& nut)
{
    const double T = nut.period();
    const int n = PeriodicNutrient::kPositivityGrid;
    auto [tmin, vmin] = scan_and_refine_min([&](double t) { return nut(t); }, 0.0, T, n, 1e-12);
    auto [tmax, vneg] = scan_and_refine_min([&](double t) { return -nut(t); }, 0.0, T, n, 1e-12);
    if (!(vmin > 0.0))
        throw PositivityViolation("nutrient minimum is not positive: " + std::to_string(vmin));

    NutrientStats s;
    s.mean = nut.mean();
    s.min = vmin;
    s.max = -vneg;
    s.argmin = std::fmod(tmin, T);
    s.argmax = std::fmod(tmax, T);
    // a constant nutrient has no interior extremum; keep the ordering exact
    s.min = std::min(s.min, s.mean);
    s.max = std::max(s.max, s.mean);
    return s;
}

double quadrature_mean(const PeriodicNutrient& nut, double offset, int points)
{
    const double T = nut.period();
    double sum = 0.0;
    for (int i = 0; i < points; ++i)
        sum += nut(offset + T * i / points);
    return sum / points;
}

} // namespace tumorbif
