#include "hardyz/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hardyz/hardy.hpp"
#include "hardyz/parallel.hpp"
#include "hardyz/summation.hpp"
#include "hardyz/zeta_core.hpp"

namespace hardyz {

namespace {

// Points used to estimate the typical size of an integrand.
constexpr int kPilotPoints = 256;
// Finer samples per interval that crosses a measure threshold.
constexpr int kMeasureRefine = 8;
constexpr std::size_t kMeasureChunk = 4096;

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

void check_k(int k, int lo, int hi, const char* what) {
    if (k < lo || k > hi) {
        std::ostringstream os;
        os << what << ": k must lie in " << lo << ".." << hi << ", got " << k;
        throw Error(ErrorCode::InvalidArgument, os.str());
    }
}

double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

// Adaptive quadrature of f over the window with the layout's breakpoints.
// The absolute floor is tol times the pilot mean of |f| per unit length.
// degree is the total power of Z and Z' in f; it scales the rounding floor.
MomentEstimate integrate_over(const Integrand& f, double a, double b, std::span<const double> cuts,
                              const MomentConfig& mc, int degree) {
    CompensatedSum pilot;
    for (int i = 0; i < kPilotPoints; ++i) {
        pilot += std::fabs(f(a + (b - a) * (i + 0.5) / kPilotPoints));
    }
    const double scale = pilot.value() / kPilotPoints;
    QuadOptions opts;
    opts.rel_tol = mc.tol;
    opts.abs_tol_per_length = std::max(mc.tol * scale, 1e-300);
    opts.noise_rel = 4.0 * degree * phase_noise(b);
    opts.threads = mc.threads;
    return integrate_adaptive(f, a, b, cuts, opts);
}

MomentEstimate integrate_layout(const Integrand& f, const WindowLayout& layout, const MomentConfig& mc, int degree) {
    mc.validate();
    const std::vector<double> cuts = layout.breakpoints();
    return integrate_over(f, layout.window.t_start, layout.window.t_end(), cuts, mc, degree);
}

}  // namespace

void MomentConfig::validate() const {
    eval.validate();
    if (!(tol > 0.0 && tol <= 1e-2)) throw Error(ErrorCode::InvalidArgument, "tol must lie in (0, 1e-2]");
}

std::vector<double> WindowLayout::breakpoints() const {
    std::vector<double> pts;
    const double a = window.t_start;
    const double b = window.t_end();
    auto keep = [&](double t) {
        if (t > a && t < b) pts.push_back(t);
    };
    if (lead_lambda) keep(*lead_lambda);
    for (const auto& r : zeros.records) {
        keep(r.gamma);
        if (r.has_stationary_point()) keep(r.lambda);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

WindowLayout window_layout(const Window& window, const EvalConfig& cfg, unsigned threads) {
    LocateOptions lo;
    lo.threads = threads;
    return window_layout(locate_zeros(window, cfg, lo), cfg, threads);
}

WindowLayout window_layout(const ZeroSet& zs, const EvalConfig& cfg, unsigned threads) {
    WindowLayout layout;
    layout.window = zs.window;
    layout.zeros = zs.stationary_points_filled() ? zs : stationary_points(zs, cfg, threads);

    const double a = zs.window.t_start;
    const double b = zs.records.empty() ? zs.window.t_end() : zs.records.front().gamma;
    if (b > a) {
        auto dz = [&cfg](double t) { return hardy_jet(t, cfg).dz; };
        const double da = dz(a);
        const double db = dz(b);
        if (sign_of(da) * sign_of(db) < 0) {
            const double lambda = refine_root(dz, a, da, b, db, 1e-9);
            layout.lead_lambda = lambda;
            layout.z_at_lead_lambda = hardy_z(lambda, cfg).z;
        }
    }
    return layout;
}

MomentEstimate moment_zeta(const WindowLayout& layout, int k, const MomentConfig& mc) {
    check_k(k, 1, 4, "moment_zeta");
    const EvalConfig cfg = mc.eval;
    return integrate_layout([cfg, k](double t) { return ipow(std::fabs(hardy_z(t, cfg).z), 2 * k); }, layout, mc,
                            2 * k);
}

MomentEstimate moment_zeta(const Window& window, int k, const MomentConfig& mc) {
    check_k(k, 1, 4, "moment_zeta");
    return moment_zeta(window_layout(window, mc.eval, mc.threads), k, mc);
}

MomentEstimate moment_zeta_deriv(const WindowLayout& layout, int k, const MomentConfig& mc) {
    check_k(k, 1, 3, "moment_zeta_deriv");
    const EvalConfig cfg = mc.eval;
    auto f = [cfg, k](double t) {
        const HardyJet j = hardy_jet(t, cfg);
        const double th = rs_theta_deriv(t);
        return ipow(j.dz * j.dz + th * th * j.z * j.z, k);
    };
    return integrate_layout(f, layout, mc, 2 * k);
}

MomentEstimate moment_zeta_deriv(const Window& window, int k, const MomentConfig& mc) {
    check_k(k, 1, 3, "moment_zeta_deriv");
    return moment_zeta_deriv(window_layout(window, mc.eval, mc.threads), k, mc);
}

MomentEstimate moment_zprime_zk(const WindowLayout& layout, int k, const MomentConfig& mc) {
    check_k(k, 2, 4, "moment_zprime_zk");
    const EvalConfig cfg = mc.eval;
    auto f = [cfg, k](double t) {
        const HardyJet j = hardy_jet(t, cfg);
        return j.dz * j.dz * ipow(j.z * j.z, k - 1);
    };
    return integrate_layout(f, layout, mc, 2 * k);
}

MomentEstimate moment_zprime_zk(const Window& window, int k, const MomentConfig& mc) {
    check_k(k, 2, 4, "moment_zprime_zk");
    return moment_zprime_zk(window_layout(window, mc.eval, mc.threads), k, mc);
}

MomentEstimate abs_moment_zprime_z(const WindowLayout& layout, int k, const MomentConfig& mc) {
    check_k(k, 1, 4, "abs_moment_zprime_z");
    const EvalConfig cfg = mc.eval;
    auto f = [cfg, k](double t) {
        const HardyJet j = hardy_jet(t, cfg);
        return std::fabs(j.dz * ipow(j.z, 2 * k - 1));
    };
    return integrate_layout(f, layout, mc, 2 * k);
}

MomentEstimate abs_moment_zprime_z(const Window& window, int k, const MomentConfig& mc) {
    check_k(k, 1, 4, "abs_moment_zprime_z");
    return abs_moment_zprime_z(window_layout(window, mc.eval, mc.threads), k, mc);
}

MomentEstimate moment_zprime_2k(const WindowLayout& layout, int k, const MomentConfig& mc) {
    check_k(k, 1, 4, "moment_zprime_2k");
    const EvalConfig cfg = mc.eval;
    return integrate_layout([cfg, k](double t) { return ipow(hardy_jet(t, cfg).dz, 2 * k); }, layout, mc, 2 * k);
}

GapIdentity gap_identity_check(const ZeroRecord& rec, int k, const MomentConfig& mc) {
    check_k(k, 1, 4, "gap_identity_check");
    mc.validate();
    GapIdentity g;
    if (rec.degenerate) return g;
    if (!rec.has_stationary_point()) {
        throw Error(ErrorCode::InvalidArgument, "gap_identity_check: record has no stationary point");
    }
    g.rhs = ipow(rec.z_at_lambda * rec.z_at_lambda, k) / k;
    const EvalConfig cfg = mc.eval;
    auto f = [cfg, k](double t) {
        const HardyJet j = hardy_jet(t, cfg);
        return std::fabs(j.dz * ipow(j.z, 2 * k - 1));
    };
    const double cut[] = {rec.lambda};
    const double width = rec.gamma_plus - rec.gamma;
    QuadOptions opts;
    opts.rel_tol = mc.tol;
    opts.abs_tol_per_length = std::max(mc.tol * g.rhs / width, 1e-300);
    opts.noise_rel = 8.0 * k * phase_noise(rec.gamma_plus);
    g.lhs = integrate_adaptive(f, rec.gamma, rec.gamma_plus, cut, opts).value;
    g.rel_residual = g.rhs > 0.0 ? std::fabs(g.lhs - g.rhs) / g.rhs : std::fabs(g.lhs);
    return g;
}

ExtremaSum extrema_sum(const ZeroSet& zs, int k) {
    check_k(k, 1, 8, "extrema_sum");
    if (!zs.stationary_points_filled()) {
        throw Error(ErrorCode::InvalidArgument, "extrema_sum: stationary points not filled");
    }
    ExtremaSum es;
    es.window = zs.window;
    es.k = k;
    es.zero_count = zs.count();
    CompensatedSum sum;
    for (const auto& r : zs.records) sum += ipow(r.z_at_lambda * r.z_at_lambda, k);
    es.sum = sum.value();
    es.normalized = es.sum / (zs.window.width * std::pow(std::log(zs.window.t_start), k * k));
    return es;
}

double conrey_ghosh_ratio(const ExtremaSum& es) {
    const double log_t = std::log(es.window.t_start);
    return es.sum / (es.window.width / (4.0 * std::numbers::pi) * log_t * log_t);
}

MkResult mk_from_zeros(const ZeroSet& zs, int k) {
    const ExtremaSum es = extrema_sum(zs, k);
    MkResult m;
    m.t = zs.window.t_end();
    m.k = k;
    m.zero_count = zs.count();
    m.mk = m.zero_count > 0 ? es.sum / static_cast<double>(m.zero_count) : 0.0;
    m.normalized = m.mk / std::pow(std::log(m.t), k * k);
    return m;
}

MkResult normalized_Mk(double t, int k, const EvalConfig& cfg, unsigned threads) {
    if (!(t > 2.0 * kLowestTMin && t <= 1e5)) {
        throw Error(ErrorCode::InvalidArgument, "normalized_Mk: T must lie in (20, 1e5]");
    }
    EvalConfig low = cfg;
    low.t_min = std::min(cfg.t_min, kLowestTMin);
    // No zero lies below 14, so (10, T] holds every zero up to T.
    LocateOptions lo;
    lo.threads = threads;
    const ZeroSet zs = locate_zeros({kLowestTMin, t - kLowestTMin}, low, lo);
    return mk_from_zeros(stationary_points(zs, low, threads), k);
}

TelescopingCheck telescoping_check(const WindowLayout& layout, int k, const MomentConfig& mc) {
    TelescopingCheck tc;
    tc.lhs = k * abs_moment_zprime_z(layout, k, mc).value;
    tc.extrema = extrema_sum(layout.zeros, k).sum;

    // Z^(2k) is monotone between consecutive zeros and stationary points,
    // so k int |Z' Z^(2k-1)| is half its total variation.
    std::vector<std::pair<double, double>> nodes;
    const double a = layout.window.t_start;
    const double b = layout.window.t_end();
    nodes.emplace_back(a, hardy_z(a, mc.eval).z);
    if (layout.lead_lambda) nodes.emplace_back(*layout.lead_lambda, layout.z_at_lead_lambda);
    for (const auto& r : layout.zeros.records) {
        if (r.gamma > a && r.gamma < b) nodes.emplace_back(r.gamma, 0.0);
        if (r.lambda > a && r.lambda < b) nodes.emplace_back(r.lambda, r.z_at_lambda);
    }
    nodes.emplace_back(b, hardy_z(b, mc.eval).z);
    std::stable_sort(nodes.begin(), nodes.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    CompensatedSum variation;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double p0 = ipow(nodes[i - 1].second * nodes[i - 1].second, k);
        const double p1 = ipow(nodes[i].second * nodes[i].second, k);
        variation += std::fabs(p1 - p0);
    }
    const double predicted = 0.5 * variation.value();
    tc.correction = predicted - tc.extrema;
    tc.rel_residual = predicted > 0.0 ? std::fabs(tc.lhs - predicted) / predicted : std::fabs(tc.lhs);
    return tc;
}

TelescopingCheck telescoping_check(std::span<const ZeroRecord> gaps, int k, const MomentConfig& mc) {
    check_k(k, 1, 4, "telescoping_check");
    mc.validate();
    if (gaps.empty()) return {};
    std::vector<double> cuts;
    CompensatedSum extrema;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        const ZeroRecord& r = gaps[i];
        if (!r.has_stationary_point()) {
            throw Error(ErrorCode::InvalidArgument, "telescoping_check: stationary points not filled");
        }
        if (i + 1 < gaps.size() && r.gamma_plus != gaps[i + 1].gamma) {
            throw Error(ErrorCode::InvalidArgument, "telescoping_check: gaps are not consecutive");
        }
        if (i > 0) cuts.push_back(r.gamma);
        if (r.lambda > r.gamma && r.lambda < r.gamma_plus) cuts.push_back(r.lambda);
        extrema += ipow(r.z_at_lambda * r.z_at_lambda, k);
    }
    const EvalConfig cfg = mc.eval;
    auto f = [cfg, k](double t) {
        const HardyJet j = hardy_jet(t, cfg);
        return std::fabs(j.dz * ipow(j.z, 2 * k - 1));
    };
    TelescopingCheck tc;
    tc.lhs = k * integrate_over(f, gaps.front().gamma, gaps.back().gamma_plus, cuts, mc, 2 * k).value;
    tc.extrema = extrema.value();
    tc.rel_residual = tc.extrema > 0.0 ? std::fabs(tc.lhs - tc.extrema) / tc.extrema : std::fabs(tc.lhs);
    return tc;
}

HolderCheck holder_check(const WindowLayout& layout, int k, const MomentConfig& mc) {
    const MomentEstimate lhs = abs_moment_zprime_z(layout, k, mc);
    const MomentEstimate zp = moment_zprime_2k(layout, k, mc);
    const MomentEstimate ze = moment_zeta(layout, k, mc);
    HolderCheck h;
    h.lhs = lhs.value;
    h.zprime_moment = zp.value;
    h.zeta_moment = ze.value;
    const double p = 1.0 / (2.0 * k);
    h.rhs = std::pow(zp.value, p) * std::pow(ze.value, 1.0 - p);
    const double slack = lhs.abs_error_estimate + h.rhs * (zp.abs_error_estimate / zp.value + ze.abs_error_estimate / ze.value);
    h.holds = h.lhs <= h.rhs + slack;
    return h;
}

std::vector<MeasureEstimate> large_value_measure(double center, double half_width, std::span<const double> v_grid,
                                                 double sample_step, const EvalConfig& cfg, unsigned threads) {
    cfg.validate();
    const Window window{center - half_width, 2.0 * half_width};
    if (!(half_width > 0.0)) throw Error(ErrorCode::InvalidArgument, "large_value_measure: half width must be positive");
    window.validate(cfg);
    if (!(sample_step > 0.0 && sample_step <= 0.05 / std::log(center))) {
        throw Error(ErrorCode::InvalidArgument, "large_value_measure: sample_step must lie in (0, 0.05 / log T]");
    }
    for (std::size_t i = 1; i < v_grid.size(); ++i) {
        if (!(v_grid[i] >= v_grid[i - 1])) {
            throw Error(ErrorCode::InvalidArgument, "large_value_measure: V grid must be increasing");
        }
    }

    const double a = window.t_start;
    const double b = window.t_end();
    const auto n = static_cast<std::size_t>(std::ceil(window.width / sample_step));
    const double h = window.width / static_cast<double>(n);
    auto node = [&](std::size_t i) { return i == n ? b : a + h * static_cast<double>(i); };
    auto log_abs_z = [&cfg](double t) { return std::log(std::max(std::fabs(hardy_z(t, cfg).z), 1e-300)); };

    std::vector<double> level(n + 1);
    const std::size_t chunks = (n + kMeasureChunk) / kMeasureChunk;
    parallel_for(chunks, resolve_threads(threads), [&](std::size_t c) {
        const std::size_t i1 = std::min(n + 1, (c + 1) * kMeasureChunk);
        for (std::size_t i = c * kMeasureChunk; i < i1; ++i) level[i] = log_abs_z(node(i));
    });

    auto crosses = [&](double x, double y) {
        const double lo = std::min(x, y);
        const double hi = std::max(x, y);
        return std::any_of(v_grid.begin(), v_grid.end(), [&](double v) { return v > lo && v < hi; });
    };

    // Interior levels of each refined interval, kMeasureRefine - 1 per interval.
    std::vector<std::vector<double>> fine(n);
    parallel_for(chunks, resolve_threads(threads), [&](std::size_t c) {
        const std::size_t i1 = std::min(n, (c + 1) * kMeasureChunk);
        for (std::size_t i = c * kMeasureChunk; i < i1; ++i) {
            if (!crosses(level[i], level[i + 1])) continue;
            const double t0 = node(i);
            const double dt = (node(i + 1) - t0) / kMeasureRefine;
            fine[i].resize(kMeasureRefine - 1);
            for (int j = 1; j < kMeasureRefine; ++j) fine[i][j - 1] = log_abs_z(t0 + dt * j);
        }
    });

    auto piece = [](double len, double x, double y, double v) {
        const double lo = std::min(x, y);
        const double hi = std::max(x, y);
        if (v <= lo) return len;
        if (v >= hi) return 0.0;
        return len * (hi - v) / (hi - lo);
    };

    std::vector<MeasureEstimate> out;
    out.reserve(v_grid.size());
    for (const double v : v_grid) {
        CompensatedSum mu;
        for (std::size_t i = 0; i < n; ++i) {
            const double len = node(i + 1) - node(i);
            if (fine[i].empty()) {
                mu += piece(len, level[i], level[i + 1], v);
                continue;
            }
            double prev = level[i];
            for (int j = 0; j < kMeasureRefine; ++j) {
                const double cur = j + 1 < kMeasureRefine ? fine[i][j] : level[i + 1];
                mu += piece(len / kMeasureRefine, prev, cur, v);
                prev = cur;
            }
        }
        out.push_back({window, v, std::clamp(mu.value(), 0.0, window.width), h});
    }
    return out;
}

DecayFit fit_large_value_decay(std::span<const MeasureEstimate> est, double center, double half_width) {
    const double log2t = std::log(std::log(center));
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& e : est) {
        if (!(e.mu > 0.0) || !std::isfinite(e.v)) continue;
        xs.push_back(-e.v * e.v / log2t);
        ys.push_back(std::log(e.mu / half_width));
    }
    DecayFit fit;
    fit.points = xs.size();
    if (xs.size() < 2) return fit;
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= xs.size();
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

}  // namespace hardyz
