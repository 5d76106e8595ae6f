#include "hardyz/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "hardyz/parallel.hpp"
#include "hardyz/summation.hpp"

namespace hardyz {

namespace {

// Kronrod abscissae on [-1, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct PanelResult {
    double value = 0.0;
    double error = 0.0;
    double abs_value = 0.0;
};

struct SegmentResult {
    CompensatedSum value;
    double error = 0.0;
    std::int64_t panels = 0;
    std::int64_t evals = 0;
};

double checked(const Integrand& f, double x) {
    const double y = f(x);
    if (!std::isfinite(y)) {
        std::ostringstream os;
        os << "integrand is not finite at t = " << x;
        throw Error(ErrorCode::NonFinite, os.str());
    }
    return y;
}

PanelResult gauss_kronrod(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = checked(f, center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    double abs_kronrod = std::fabs(fc) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double lo = checked(f, center - dx);
        const double hi = checked(f, center + dx);
        kronrod += kWgk[j] * (lo + hi);
        abs_kronrod += kWgk[j] * (std::fabs(lo) + std::fabs(hi));
        if (j % 2 == 1) gauss += kWg[j / 2] * (lo + hi);
    }
    return {kronrod * half, std::fabs((kronrod - gauss) * half), abs_kronrod * half};
}

void adapt(const Integrand& f, double a, double b, int depth, const QuadOptions& opts, SegmentResult& out) {
    const PanelResult r = gauss_kronrod(f, a, b);
    out.evals += 15;
    const double allowed = std::max({opts.abs_tol_per_length * (b - a), opts.rel_tol * std::fabs(r.value),
                                     opts.noise_rel * r.abs_value});
    if (depth >= opts.min_depth && r.error <= allowed) {
        out.value += r.value;
        out.error += r.error;
        ++out.panels;
        return;
    }
    if (out.evals >= 15 * opts.max_panels) {
        std::ostringstream os;
        os << "tolerance not met on [" << a << ", " << b << "] within " << opts.max_panels << " panels";
        throw Error(ErrorCode::ToleranceUnmet, os.str());
    }
    if (depth >= opts.max_depth) {
        std::ostringstream os;
        os << "tolerance not met on [" << a << ", " << b << "] after " << depth << " bisections";
        throw Error(ErrorCode::ToleranceUnmet, os.str());
    }
    const double mid = 0.5 * (a + b);
    adapt(f, a, mid, depth + 1, opts, out);
    adapt(f, mid, b, depth + 1, opts, out);
}

}  // namespace

MomentEstimate integrate_adaptive(const Integrand& f, const Window& window, double tol,
                                  std::span<const double> breakpoints) {
    QuadOptions opts;
    opts.abs_tol_per_length = tol;
    return integrate_adaptive(f, window.t_start, window.t_end(), breakpoints, opts);
}

MomentEstimate integrate_adaptive(const Integrand& f, double a, double b,
                                  std::span<const double> breakpoints, const QuadOptions& opts) {
    if (!(std::isfinite(a) && std::isfinite(b) && b > a)) {
        throw Error(ErrorCode::InvalidArgument, "integration interval must be finite with b > a");
    }
    if (!(opts.abs_tol_per_length > 0.0 || opts.rel_tol > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "quadrature tolerance must be positive");
    }
    if (opts.abs_tol_per_length < 0.0 || opts.rel_tol < 0.0 || opts.noise_rel < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "quadrature tolerance must not be negative");
    }

    std::vector<double> cuts{a};
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        const double x = breakpoints[i];
        if (i > 0 && x < breakpoints[i - 1]) {
            throw Error(ErrorCode::InvalidArgument, "breakpoints must be sorted");
        }
        if (x < a || x > b) throw Error(ErrorCode::InvalidArgument, "breakpoint outside the window");
        if (x > cuts.back() && x < b) cuts.push_back(x);
    }
    cuts.push_back(b);

    const std::size_t segments = cuts.size() - 1;
    std::vector<SegmentResult> parts(segments);
    parallel_for(segments, opts.threads, [&](std::size_t i) {
        adapt(f, cuts[i], cuts[i + 1], 0, opts, parts[i]);
    });

    CompensatedSum total;
    MomentEstimate est;
    for (const auto& p : parts) {
        total += p.value.value();
        est.abs_error_estimate += p.error;
        est.panels += p.panels;
        est.evals += p.evals;
    }
    est.value = total.value();
    return est;
}

}  // namespace hardyz
