// Critical-line zeros of Z(t), the stationary point between each pair of
// consecutive zeros, and the zero-counting main terms.
#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "hardyz/types.hpp"

namespace hardyz {

// One gap between consecutive zeros gamma <= gamma_plus.
struct ZeroRecord {
    double gamma = 0.0;
    double gamma_plus = 0.0;
    double lambda = std::numeric_limits<double>::quiet_NaN();  // filled by stationary_points()
    double z_at_lambda = 0.0;  // Z(lambda)
    // gamma_plus - gamma below kCoincidentGap: treated as a multiple zero.
    bool degenerate = false;
    bool has_stationary_point() const noexcept { return !std::isnan(lambda); }
};

// Zeros gamma in (t_start, t_end], each paired with the following zero.
// The last record's gamma_plus lies beyond the window.
struct ZeroSet {
    Window window;
    std::vector<ZeroRecord> records;

    std::size_t count() const noexcept { return records.size(); }
    bool stationary_points_filled() const noexcept;
};

inline constexpr double kCoincidentGap = 1e-7;

struct LocateOptions {
    // Multiplies the initial scan step 0.2 * 2 pi / log(t / 2 pi).
    double step_scale = 1.0;
    // Throw MissedZeros when the count disagrees with the main terms.
    bool check_count = true;
    unsigned threads = 1;
};

// (T/2pi) log(T/2pi) - T/2pi.
double zero_count_formula(double t);

// Allowed |count - predicted| for the window: 2 (log T + log(T+H)).
double zero_count_slack(const Window& window);

// count - (formula(T+H) - formula(T)).
double zero_count_discrepancy(const ZeroSet& zs);

// Gram points g_n in the window, theta(g_n) = n pi.
std::vector<double> gram_points(const Window& window);

// Initial scan step at height t.
double scan_step(double t);

ZeroSet locate_zeros(const Window& window, const EvalConfig& cfg, const LocateOptions& opts = {});

// Fills lambda and z_at_lambda for every record. Throws InterlacingViolation
// when Z' changes sign more than once inside a gap.
ZeroSet stationary_points(const ZeroSet& zs, const EvalConfig& cfg, unsigned threads = 1);

// Refine a root of f bracketed by [lo, hi] (f(lo), f(hi) of opposite sign):
// bisection down to width 1e-6, then Illinois-modified secant down to `tol`.
template <class F>
double refine_root(F&& f, double lo, double f_lo, double hi, double f_hi, double tol = 1e-9);

}  // namespace hardyz

#include "hardyz/detail/refine_root.hpp"
