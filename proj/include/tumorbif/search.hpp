#pragma once

#include <cmath>
#include <utility>

namespace tumorbif {

/// Golden-section minimization of `fn` on [a, b]; returns (argmin, min).
/// Assumes `fn` is unimodal on the interval (callers bracket with a grid scan first).
template <class Fn>
std::pair<double, double> golden_section_min(Fn&& fn, double a, double b, double tol = 1e-12)
{
    constexpr double inv_phi = 0.6180339887498948482;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = fn(c);
    double fd = fn(d);
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = fn(d);
        }
    }
    double x = 0.5 * (a + b);
    double fx = fn(x);
    if (fc < fx) { x = c; fx = fc; }
    if (fd < fx) { x = d; fx = fd; }
    return {x, fx};
}

/// Grid scan of `n + 1` points on [a, b] followed by golden-section refinement
/// on the two cells around the best node; returns (argmin, min).
template <class Fn>
std::pair<double, double> scan_and_refine_min(Fn&& fn, double a, double b, int n, double tol = 1e-12)
{
    const double h = (b - a) / n;
    int best = 0;
    double best_val = fn(a);
    for (int i = 1; i <= n; ++i) {
        const double v = fn(a + i * h);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    const double lo = a + std::max(0, best - 1) * h;
    const double hi = a + std::min(n, best + 1) * h;
    auto refined = golden_section_min(fn, lo, hi, tol);
    if (refined.second <= best_val)
        return refined;
    return {a + best * h, best_val};
}

} // namespace tumorbif
