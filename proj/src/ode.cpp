#include "tumorbif/ode.hpp"

#include "tumorbif/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tumorbif {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

} // namespace

void Trajectory::start(double t0, double y0)
{
    times_.assign(1, t0);
    values_.assign(1, y0);
    coeffs_.clear();
}

void Trajectory::push(double t1, double y1, const std::array<double, 3>& tail_coeffs)
{
    times_.push_back(t1);
    values_.push_back(y1);
    coeffs_.push_back(tail_coeffs);
}

double Trajectory::operator()(double t) const
{
    if (times_.empty())
        throw DomainError("empty trajectory");
    const double span = times_.back() - times_.front();
    const double slack = 1e-12 * std::max(1.0, std::fabs(span));
    if (t < times_.front() - slack || t > times_.back() + slack)
        throw DomainError("trajectory evaluated outside its time range");
    if (coeffs_.empty())
        return values_.front();
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t i = it == times_.begin() ? 0 : static_cast<std::size_t>(it - times_.begin()) - 1;
    if (i >= coeffs_.size())
        i = coeffs_.size() - 1;
    const double h = times_[i + 1] - times_[i];
    const double theta = std::clamp((t - times_[i]) / h, 0.0, 1.0);
    const double theta1 = 1.0 - theta;
    const auto& c = coeffs_[i];
    const double rc2 = values_[i + 1] - values_[i];
    return values_[i] + theta * (rc2 + theta1 * (c[0] + theta * (c[1] + theta1 * c[2])));
}

Trajectory dopri5(const ScalarRhs& f, double t0, double y0, double t_end,
                  const Dopri5Options& opts, const StepFilter& accept)
{
    if (!(t_end > t0))
        throw DomainError("integration end must follow the start time");
    if (!(opts.tol > 0.0))
        throw DomainError("integration tolerance must be positive");

    Trajectory traj;
    traj.start(t0, y0);

    const double span = t_end - t0;
    const double h_max = std::min(opts.max_step, span);
    const double h_floor = 1e-14 * std::max(1.0, std::fabs(t0) + span);

    double t = t0;
    double y = y0;
    double k1 = f(t, y);

    double h = opts.initial_step;
    if (!(h > 0.0)) {
        // error per unit step scales like h^4, so aim a first step at tol^(1/4)
        const double scale = std::max(1.0, std::fabs(y));
        const double slope = std::fabs(k1) / scale;
        h = std::pow(opts.tol, 0.25) / std::max(1.0, slope);
        h = std::min(h, 0.01 * span);
    }
    h = std::min(h, h_max);

    long taken = 0;
    while (t < t_end) {
        if (++taken > opts.max_steps)
            throw ToleranceNotMet("step budget exhausted at t = " + std::to_string(t));
        bool last = false;
        if (t + h >= t_end || t_end - (t + h) < h_floor) {
            h = t_end - t;
            last = true;
        }

        const double k2 = f(t + c2 * h, y + h * a21 * k1);
        const double k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        const double k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const double k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const double k6 = f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const double y1 = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        const double t1 = last ? t_end : t + h;

        bool admissible = std::isfinite(y1) && (!accept || accept(t1, y1));
        double k7 = 0.0;
        if (admissible) {
            k7 = f(t1, y1);
            admissible = std::isfinite(k7);
        }
        if (!admissible) {
            h *= 0.25;
            if (h < h_floor)
                throw ToleranceNotMet("step size underflow after rejected step at t = " + std::to_string(t));
            continue;
        }

        const double err = std::fabs(h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
        const double bound = opts.tol * h * std::max(1.0, std::max(std::fabs(y), std::fabs(y1)));
        const double ratio = err / bound;

        if (ratio <= 1.0) {
            const double rc2 = y1 - y;
            const double rc3 = h * k1 - rc2;
            const double rc4 = rc2 - h * k7 - rc3;
            const double rc5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
            traj.push(t1, y1, {rc3, rc4, rc5});
            t = t1;
            y = y1;
            k1 = k7;
            if (last)
                break;
            const double grow = ratio > 0.0 ? 0.9 * std::pow(ratio, -0.25) : 5.0;
            h = std::min(h * std::clamp(grow, 0.2, 5.0), h_max);
        } else {
            h *= std::clamp(0.9 * std::pow(ratio, -0.25), 0.1, 0.9);
            if (h < h_floor)
                throw ToleranceNotMet("step size underflow at t = " + std::to_string(t));
        }
    }
    return traj;
}

} // namespace tumorbif
