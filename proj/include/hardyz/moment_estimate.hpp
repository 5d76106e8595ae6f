#pragma once

#include <cstdint>

namespace hardyz {

// Result of one adaptive quadrature.
struct MomentEstimate {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::int64_t panels = 0;
    std::int64_t evals = 0;
};

}  // namespace hardyz
