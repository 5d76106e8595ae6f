#include "hardyz/zeros.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hardyz/hardy.hpp"
#include "hardyz/parallel.hpp"
#include "hardyz/zeta_core.hpp"

namespace hardyz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
// Smallest subinterval the hidden-pair search will split.
constexpr double kFloorStep = 1e-4;
// Scan intervals per independently processed chunk.
constexpr std::size_t kChunkIntervals = 256;
// Probes per gap when checking that Z' changes sign exactly once.
constexpr int kGapProbes = 10;

struct Sample {
    double t;
    double z;
    double dz;
};

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

Sample sample_at(double t, const EvalConfig& cfg) {
    const HardyJet j = hardy_jet(t, cfg);
    return {t, j.z, j.dz};
}

double zero_of_z(double lo, double z_lo, double hi, double z_hi, const EvalConfig& cfg) {
    auto f = [&cfg](double t) { return hardy_z(t, cfg).z; };
    return refine_root(f, lo, z_lo, hi, z_hi, 1e-9);
}

// Appends the zeros of Z in (a.t, b.t]. Under interlacing, Z keeping its sign
// at both ends while |Z| falls at a and rises at b means a pair of zeros
// sits in between; such intervals are halved until the pair separates.
void scan_interval(const Sample& a, const Sample& b, const EvalConfig& cfg, std::vector<double>& out) {
    const int sb = sign_of(b.z);
    if (sb == 0) {
        out.push_back(b.t);
        return;
    }
    const int sa = sign_of(a.z) != 0 ? sign_of(a.z) : sign_of(a.dz);
    if (sa != sb) {
        out.push_back(zero_of_z(a.t, a.z == 0.0 ? sa * 1e-300 : a.z, b.t, b.z, cfg));
        return;
    }
    const bool falling_at_a = sa * a.dz < 0.0;
    const bool rising_at_b = sb * b.dz > 0.0;
    if (falling_at_a && rising_at_b && b.t - a.t > kFloorStep) {
        const Sample mid = sample_at(0.5 * (a.t + b.t), cfg);
        scan_interval(a, mid, cfg, out);
        scan_interval(mid, b, cfg, out);
    }
}

std::vector<double> scan_grid(const Window& w, double step_scale) {
    std::vector<double> grid{w.t_start};
    const double end = w.t_end();
    while (grid.back() < end) {
        const double next = grid.back() + step_scale * scan_step(grid.back());
        grid.push_back(std::min(next, end));
    }
    return grid;
}

}  // namespace

bool ZeroSet::stationary_points_filled() const noexcept {
    return std::all_of(records.begin(), records.end(),
                       [](const ZeroRecord& r) { return r.has_stationary_point(); });
}

double zero_count_formula(double t) {
    const double x = t / kTwoPi;
    return x * std::log(x) - x;
}

double zero_count_slack(const Window& window) {
    return 2.0 * (std::log(window.t_start) + std::log(window.t_end()));
}

double zero_count_discrepancy(const ZeroSet& zs) {
    const double predicted = zero_count_formula(zs.window.t_end()) - zero_count_formula(zs.window.t_start);
    return static_cast<double>(zs.count()) - predicted;
}

double scan_step(double t) {
    const double log_height = std::max(std::log(t / kTwoPi), 0.5);
    return 0.2 * kTwoPi / log_height;
}

std::vector<double> gram_points(const Window& window) {
    if (window.t_start < 7.0) {
        throw Error(ErrorCode::Domain, "gram_points: theta is monotone only above t = 6.3");
    }
    std::vector<double> out;
    const double lo = window.t_start;
    const double hi = window.t_end();
    const long first = static_cast<long>(std::ceil(rs_theta(lo) / kPi));
    const long last = static_cast<long>(std::floor(rs_theta(hi) / kPi));
    double t = lo;
    for (long n = first; n <= last; ++n) {
        const double target = static_cast<double>(n) * kPi;
        t += (target - rs_theta(t)) / rs_theta_deriv(t);
        for (int iter = 0; iter < 50; ++iter) {
            const double step = (rs_theta(t) - target) / rs_theta_deriv(t);
            t -= step;
            if (std::fabs(step) <= 1e-13 * std::max(1.0, t)) break;
        }
        if (t >= lo && t <= hi && (out.empty() || t > out.back())) out.push_back(t);
    }
    return out;
}

ZeroSet locate_zeros(const Window& window, const EvalConfig& cfg, const LocateOptions& opts) {
    cfg.validate();
    window.validate(cfg);
    if (!(opts.step_scale > 0.0 && opts.step_scale <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "step_scale must lie in (0, 1]");
    }

    const std::vector<double> grid = scan_grid(window, opts.step_scale);
    const std::size_t intervals = grid.size() - 1;
    const std::size_t chunks = (intervals + kChunkIntervals - 1) / kChunkIntervals;
    std::vector<std::vector<double>> found(chunks);
    parallel_for(chunks, opts.threads, [&](std::size_t c) {
        const std::size_t i0 = c * kChunkIntervals;
        const std::size_t i1 = std::min(intervals, i0 + kChunkIntervals);
        Sample prev = sample_at(grid[i0], cfg);
        for (std::size_t i = i0; i < i1; ++i) {
            const Sample next = sample_at(grid[i + 1], cfg);
            scan_interval(prev, next, cfg, found[c]);
            prev = next;
        }
    });

    std::vector<double> zeros;
    for (const auto& part : found) zeros.insert(zeros.end(), part.begin(), part.end());

    // The zero that closes the last gap lies past the window end.
    double closing = 0.0;
    {
        Sample prev = sample_at(window.t_end(), cfg);
        std::vector<double> beyond;
        while (beyond.empty()) {
            const double t_next = prev.t + opts.step_scale * scan_step(prev.t);
            if (t_next > cfg.t_max) {
                throw Error(ErrorCode::Domain, "no closing zero below t_max");
            }
            const Sample next = sample_at(t_next, cfg);
            scan_interval(prev, next, cfg, beyond);
            prev = next;
        }
        closing = beyond.front();
    }

    ZeroSet zs;
    zs.window = window;
    zs.records.reserve(zeros.size());
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        ZeroRecord r;
        r.gamma = zeros[i];
        r.gamma_plus = i + 1 < zeros.size() ? zeros[i + 1] : closing;
        r.degenerate = r.gamma_plus - r.gamma < kCoincidentGap;
        zs.records.push_back(r);
    }

    if (opts.check_count) {
        const double diff = zero_count_discrepancy(zs);
        if (std::fabs(diff) > zero_count_slack(window)) {
            std::ostringstream os;
            os << "counted " << zs.count() << " zeros in [" << window.t_start << ", " << window.t_end()
               << "], off the main terms by " << diff;
            throw Error(ErrorCode::MissedZeros, os.str());
        }
    }
    return zs;
}

ZeroSet stationary_points(const ZeroSet& zs, const EvalConfig& cfg, unsigned threads) {
    ZeroSet out = zs;
    auto dz = [&cfg](double t) { return hardy_jet(t, cfg).dz; };
    parallel_for(out.records.size(), threads, [&](std::size_t i) {
        ZeroRecord& r = out.records[i];
        if (r.degenerate) {
            r.lambda = r.gamma;
            r.z_at_lambda = 0.0;
            return;
        }
        const double width = r.gamma_plus - r.gamma;
        std::array<double, kGapProbes + 1> ts{};
        std::array<double, kGapProbes + 1> ds{};
        for (int k = 0; k <= kGapProbes; ++k) {
            ts[k] = k == kGapProbes ? r.gamma_plus : r.gamma + width * k / kGapProbes;
            ds[k] = dz(ts[k]);
        }
        int changes = 0;
        int bracket = -1;
        int last_sign = sign_of(ds[0]);
        int last_index = 0;
        for (int k = 1; k <= kGapProbes; ++k) {
            const int s = sign_of(ds[k]);
            if (s == 0) continue;
            if (last_sign != 0 && s != last_sign) {
                ++changes;
                bracket = last_index;
            }
            last_sign = s;
            last_index = k;
        }
        if (changes != 1) {
            std::ostringstream os;
            os << "Z' changes sign " << changes << " times in the gap [" << r.gamma << ", "
               << r.gamma_plus << "]";
            throw Error(ErrorCode::InterlacingViolation, os.str());
        }
        int hi_index = bracket + 1;
        while (sign_of(ds[hi_index]) == 0) ++hi_index;
        r.lambda = refine_root(dz, ts[bracket], ds[bracket], ts[hi_index], ds[hi_index], 1e-9);
        r.z_at_lambda = hardy_z(r.lambda, cfg).z;
    });
    return out;
}

}  // namespace hardyz
