#pragma once

#include <utility>
#include <vector>

namespace tumorbif {

/// One Fourier term a_k cos(2 pi k t / T) + b_k sin(2 pi k t / T).
struct Harmonic {
    int k = 1;
    double cos_amp = 0.0;
    double sin_amp = 0.0;
};

struct NutrientStats {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    double argmin = 0.0; ///< location of the minimum in [0, T)
    double argmax = 0.0;
};

/// Positive T-periodic external nutrient concentration Phi(t).
///
/// Either a truncated Fourier series (mean + harmonics) or a uniform table of
/// samples interpolated by a periodic cubic spline. Both are C^1 in t and are
/// evaluated at t mod T. Construction validates positivity on a 4096-point grid
/// and caches the extrema, so an instance is immutable and safe to share.
class PeriodicNutrient {
public:
    static constexpr int kPositivityGrid = 4096;

    static PeriodicNutrient constant(double value, double period = 1.0);
    static PeriodicNutrient fourier(double period, double mean, std::vector<Harmonic> harmonics);
    /// `samples` are (t_i, v_i) on a uniform grid spanning one period. A trailing
    /// sample at t_0 + T is accepted and dropped if it repeats v_0.
    static PeriodicNutrient tabulated(double period, std::vector<std::pair<double, double>> samples);

    double period() const { return period_; }
    double mean() const { return mean_; }
    bool is_tabulated() const { return !values_.empty(); }
    const std::vector<Harmonic>& harmonics() const { return harmonics_; }
    /// The tabulated samples (without the duplicated endpoint), empty for Fourier form.
    std::vector<std::pair<double, double>> samples() const;

    double operator()(double t) const;
    double derivative(double t) const;

    const NutrientStats& stats() const { return stats_; }

private:
    PeriodicNutrient() = default;
    void finalize();
    double reduce(double t) const;

    double period_ = 1.0;
    double mean_ = 0.0;
    std::vector<Harmonic> harmonics_;

    // tabulated form
    double t0_ = 0.0;
    double h_ = 0.0;
    std::vector<double> values_;
    std::vector<double> second_derivs_;

    NutrientStats stats_;
};

inline double eval(const PeriodicNutrient& nut, double t) { return nut(t); }

/// Mean, minimum and maximum over one period: 4096-point scan refined by
/// golden-section search to 1e-12 in t. Throws PositivityViolation if min <= 0.
NutrientStats statistics(const PeriodicNutrient& nut);

/// Trapezoid mean of Phi over [offset, offset + T] with `points` uniform nodes.
double quadrature_mean(const PeriodicNutrient& nut, double offset = 0.0, int points = 4096);

} // namespace tumorbif
