#pragma once

// Cancellation- and overflow-safe hyperbolic helpers shared by the flat
// profiles, the Poincare bracket and the spectral quadratures.

#include <cmath>

namespace tumorbif {

/// tanh(x)/x, with the Maclaurin series 1 - x^2/3 + 2x^4/15 below 1e-4.
inline double tanh_over_x(double x)
{
    const double ax = std::fabs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 15.0;
    }
    return std::tanh(x) / x;
}

/// d/dx [tanh(x)/x] = (1 - tanh(x)/x - tanh(x)^2) / x, strictly negative for x > 0.
inline double tanh_over_x_derivative(double x)
{
    if (std::fabs(x) < 0.1) {
        // -2x/3 + 8x^3/15 - 34x^5/105 + 496x^7/2835 - 13820x^9/155925
        const double x2 = x * x;
        return x * (-2.0 / 3.0 + x2 * (8.0 / 15.0 + x2 * (-34.0 / 105.0
                    + x2 * (496.0 / 2835.0 - x2 * 13820.0 / 155925.0))));
    }
    const double th = std::tanh(x);
    return (1.0 - th / x - th * th) / x;
}

/// Inverse of the strictly decreasing map x -> tanh(x)/x on (0, inf), for v in (0, 1).
/// Bisection on [0, 1/v] (tanh(x)/x < 1/x) down to an absolute width of `tol`.
inline double inverse_tanh_over_x(double v, double tol = 1e-13)
{
    double lo = 0.0;
    double hi = 1.0 / v;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (tanh_over_x(mid) > v)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// cosh(y)/cosh(x) for 0 <= y <= x; exponential-quotient form beyond argument 30.
inline double cosh_ratio(double y, double x)
{
    if (x > 30.0)
        return std::exp(y - x) * (1.0 + std::exp(-2.0 * y)) / (1.0 + std::exp(-2.0 * x));
    return std::cosh(y) / std::cosh(x);
}

/// sqrt(1+j) tanh(sqrt(1+j) r) - sqrt(j) tanh(sqrt(j) r), written as
/// 1/(a+b) - 2a/(e^{2ar}+1) + 2b/(e^{2br}+1) so the large-j limit does not cancel.
inline double tanh_gap(double j, double r)
{
    const double a = std::sqrt(1.0 + j);
    const double b = std::sqrt(j);
    const double tail_a = 2.0 * a / (std::exp(2.0 * a * r) + 1.0);
    const double tail_b = 2.0 * b / (std::exp(2.0 * b * r) + 1.0);
    return 1.0 / (a + b) - tail_a + tail_b;
}

} // namespace tumorbif
