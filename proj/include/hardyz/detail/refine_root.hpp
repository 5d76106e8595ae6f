#pragma once

#include <cmath>

namespace hardyz {

template <class F>
double refine_root(F&& f, double lo, double f_lo, double hi, double f_hi, double tol) {
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    constexpr double kBisectWidth = 1e-6;
    while (hi - lo > kBisectWidth) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
            f_hi = fm;
        }
    }
    // Illinois: halve the stale endpoint's value when the same side is kept twice.
    int side = 0;
    for (int iter = 0; iter < 60 && hi - lo > tol; ++iter) {
        double x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx < 0.0) == (f_lo < 0.0)) {
            lo = x;
            f_lo = fx;
            if (side == -1) f_hi *= 0.5;
            side = -1;
        } else {
            hi = x;
            f_hi = fx;
            if (side == 1) f_lo *= 0.5;
            side = 1;
        }
        // Secant steps that barely move one end: close the bracket directly.
        if (hi - lo > tol && iter >= 8) {
            const double mid = 0.5 * (lo + hi);
            const double fm = f(mid);
            if (fm == 0.0) return mid;
            if ((fm < 0.0) == (f_lo < 0.0)) {
                lo = mid;
                f_lo = fm;
            } else {
                hi = mid;
                f_hi = fm;
            }
        }
    }
    return std::fabs(f_lo) <= std::fabs(f_hi) ? lo : hi;
}

}  // namespace hardyz
