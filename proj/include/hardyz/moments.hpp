// Moment integrals of Z, Z' and zeta' over a window, the extrema sums over
// zero gaps, the gap identity
//   k * int_gamma^gamma+ |Z'(t) Z(t)^(2k-1)| dt = Z(lambda)^(2k)
// and the large-value measure of log|zeta(1/2+it)|.
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hardyz/moment_estimate.hpp"
#include "hardyz/quadrature.hpp"
#include "hardyz/types.hpp"
#include "hardyz/zeros.hpp"

namespace hardyz {

struct MomentConfig {
    EvalConfig eval;
    // Relative accuracy asked of every quadrature. Panels with tiny integrands
    // fall back to tol times the nominal integrand scale per unit length.
    double tol = 1e-9;
    unsigned threads = 1;
    void validate() const;
};

// Zeros and stationary points of Z relevant to one window.
struct WindowLayout {
    Window window;
    // Zeros in (t_start, t_end] with stationary points filled.
    ZeroSet zeros;
    // Stationary point in [t_start, first zero] (or in the whole window
    // when it holds no zero), with Z there.
    std::optional<double> lead_lambda;
    double z_at_lead_lambda = 0.0;

    // Zeros and stationary points strictly inside the window, sorted.
    std::vector<double> breakpoints() const;
};

WindowLayout window_layout(const Window& window, const EvalConfig& cfg, unsigned threads = 1);
// Reuses an existing zero set; fills stationary points when missing.
WindowLayout window_layout(const ZeroSet& zs, const EvalConfig& cfg, unsigned threads = 1);

// int |Z|^(2k). Requires 1 <= k <= 4.
MomentEstimate moment_zeta(const WindowLayout& layout, int k, const MomentConfig& mc);
MomentEstimate moment_zeta(const Window& window, int k, const MomentConfig& mc);

// int |zeta'(1/2+it)|^(2k). Requires 1 <= k <= 3.
MomentEstimate moment_zeta_deriv(const WindowLayout& layout, int k, const MomentConfig& mc);
MomentEstimate moment_zeta_deriv(const Window& window, int k, const MomentConfig& mc);

// int Z'^2 Z^(2k-2). Requires 2 <= k <= 4.
MomentEstimate moment_zprime_zk(const WindowLayout& layout, int k, const MomentConfig& mc);
MomentEstimate moment_zprime_zk(const Window& window, int k, const MomentConfig& mc);

// int |Z' Z^(2k-1)|. Requires 1 <= k <= 4.
MomentEstimate abs_moment_zprime_z(const WindowLayout& layout, int k, const MomentConfig& mc);
MomentEstimate abs_moment_zprime_z(const Window& window, int k, const MomentConfig& mc);

// int Z'^(2k). Requires 1 <= k <= 4.
MomentEstimate moment_zprime_2k(const WindowLayout& layout, int k, const MomentConfig& mc);

struct GapIdentity {
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_residual = 0.0;
};

// lhs = int_gamma^gamma+ |Z' Z^(2k-1)|, rhs = Z(lambda)^(2k) / k.
GapIdentity gap_identity_check(const ZeroRecord& rec, int k, const MomentConfig& mc);

struct ExtremaSum {
    Window window;
    int k = 1;
    double sum = 0.0;  // sum of Z(lambda)^(2k) over the records
    std::size_t zero_count = 0;
    double normalized = 0.0;  // sum / (H (log T)^(k^2))
};

ExtremaSum extrema_sum(const ZeroSet& zs, int k);

// sum / ((H / 4 pi) log^2 T), the normalization whose limit is e^2 - 5 for k = 1.
double conrey_ghosh_ratio(const ExtremaSum& es);

struct MkResult {
    double t = 0.0;
    int k = 1;
    std::size_t zero_count = 0;
    double mk = 0.0;          // average of Z(lambda)^(2k) over zeros in (0, T]
    double normalized = 0.0;  // mk / (log T)^(k^2)
};

// M_k(T) from a zero set covering every zero up to T.
MkResult mk_from_zeros(const ZeroSet& zs, int k);
// Scans [10, T] and averages. T <= 1e5.
MkResult normalized_Mk(double t, int k, const EvalConfig& cfg, unsigned threads = 1);

struct TelescopingCheck {
    double lhs = 0.0;          // k * int |Z' Z^(2k-1)| over the window
    double extrema = 0.0;      // sum of Z(lambda)^(2k) over records in the window
    double correction = 0.0;   // boundary partial-gap correction
    double rel_residual = 0.0; // |lhs - extrema - correction| / (extrema + correction)
};

// Over arbitrary window: extrema + correction equals half the total
// variation of Z^(2k) on the window.
TelescopingCheck telescoping_check(const WindowLayout& layout, int k, const MomentConfig& mc);
// Over complete gaps records[first .. first+count): no correction.
TelescopingCheck telescoping_check(std::span<const ZeroRecord> gaps, int k, const MomentConfig& mc);

struct HolderCheck {
    double lhs = 0.0;             // int |Z' Z^(2k-1)|
    double zprime_moment = 0.0;   // int Z'^(2k)
    double zeta_moment = 0.0;     // int |Z|^(2k)
    double rhs = 0.0;             // zprime^(1/2k) * zeta^(1 - 1/2k)
    bool holds = false;
};

HolderCheck holder_check(const WindowLayout& layout, int k, const MomentConfig& mc);

struct MeasureEstimate {
    Window window;  // the sampled interval [T - H, T + H]
    double v = 0.0;
    double mu = 0.0;
    double sample_step = 0.0;
};

// Measure of t in [center - half_width, center + half_width] with
// log|zeta(1/2+it)| >= V, for every V in the increasing grid. Sampling is
// uniform with step sample_step <= 0.05 / log(center); intervals crossing a
// threshold are resampled eight times finer, and log|Z| is interpolated
// linearly between samples.
std::vector<MeasureEstimate> large_value_measure(double center, double half_width, std::span<const double> v_grid,
                                                 double sample_step, const EvalConfig& cfg, unsigned threads = 1);

struct DecayFit {
    double slope = 0.0;      // of log(mu / H) against -V^2 / log log T
    double intercept = 0.0;  // log of the fitted constant
    std::size_t points = 0;
};

// Least-squares fit over the estimates with mu > 0.
DecayFit fit_large_value_decay(std::span<const MeasureEstimate> est, double center, double half_width);

}  // namespace hardyz
