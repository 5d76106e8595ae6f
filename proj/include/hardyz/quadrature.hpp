// Adaptive Gauss-Kronrod (7/15) quadrature with caller-supplied breakpoints.
//
// Panels never straddle a breakpoint. A panel is accepted once the embedded
// error |K15 - G7| is at most abs_tol_per_length * (panel length) or
// rel_tol * |K15|, or once it is within noise_rel times the K15 integral
// of |f| (the integrand's own evaluation noise); otherwise it is bisected,
// up to max_depth levels and max_panels evaluated panels per segment.
// Segments between breakpoints may be integrated on separate threads; the
// final reduction runs in segment order, so the result does not depend on
// the thread count.
#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "hardyz/moment_estimate.hpp"
#include "hardyz/types.hpp"

namespace hardyz {

using Integrand = std::function<double(double)>;

struct QuadOptions {
    double abs_tol_per_length = 1e-10;
    double rel_tol = 0.0;
    int max_depth = 30;
    // Every segment is bisected at least this many times.
    int min_depth = 0;
    double noise_rel = 0.0;
    std::int64_t max_panels = std::int64_t{1} << 20;
    unsigned threads = 1;
};

MomentEstimate integrate_adaptive(const Integrand& f, const Window& window, double tol,
                                  std::span<const double> breakpoints = {});

MomentEstimate integrate_adaptive(const Integrand& f, double a, double b,
                                  std::span<const double> breakpoints, const QuadOptions& opts);

}  // namespace hardyz
