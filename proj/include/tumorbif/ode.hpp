#pragma once

#include <array>
#include <functional>
#include <limits>
#include <vector>

namespace tumorbif {

/// Accepted steps of a scalar adaptive integration plus the quartic
/// continuous extension of each step.
class Trajectory {
public:
    Trajectory() = default;

    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t steps() const { return coeffs_.size(); }
    double t_begin() const { return times_.front(); }
    double t_end() const { return times_.back(); }
    double final_value() const { return values_.back(); }

    /// Dense-output evaluation; throws DomainError outside [t_begin, t_end].
    double operator()(double t) const;

    void start(double t0, double y0);
    void push(double t1, double y1, const std::array<double, 3>& tail_coeffs);

private:
    std::vector<double> times_;
    std::vector<double> values_;
    // per step: rc3, rc4, rc5 of the Hairer continuous extension
    std::vector<std::array<double, 3>> coeffs_;
};

struct Dopri5Options {
    double tol = 1e-10;
    double max_step = std::numeric_limits<double>::infinity();
    double initial_step = 0.0; ///< 0 selects a heuristic start
    long max_steps = 50'000'000;
};

using ScalarRhs = std::function<double(double t, double y)>;
/// Returns false to reject a trial step value (it is retried with a smaller step).
using StepFilter = std::function<bool(double t, double y)>;

/// Dormand-Prince 5(4) with FSAL. The local error estimate is controlled per
/// unit step: |err| <= tol * h * max(1, |y|).
Trajectory dopri5(const ScalarRhs& f, double t0, double y0, double t_end,
                  const Dopri5Options& opts, const StepFilter& accept = {});

} // namespace tumorbif
