// Shared value types, configuration and error reporting for hardyz.
#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hardyz {

using Complex = std::complex<double>;

enum class ErrorCode {
    InvalidArgument,
    Domain,
    GammaPole,
    ZetaPole,
    PrecisionUnattainable,
    NonFinite,
    MissedZeros,
    InterlacingViolation,
    ToleranceUnmet,
    TableMismatch,
    Overflow,
    Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Precision and truncation policy shared by every evaluator.
struct EvalConfig {
    double target_rel_error = 1e-10;
    // Maximum number of Bernoulli correction terms in Euler-Maclaurin.
    int em_max_terms = 60;
    // Riemann-Siegel correction depth: 0 keeps C0 only, 2 keeps C0..C2.
    int rs_correction_terms = 2;
    double t_min = 50.0;
    double t_max = 1e8;
    // Route Z(t) through Euler-Maclaurin even where Riemann-Siegel applies.
    bool prefer_oracle = false;

    // Throws Error(InvalidArgument) when a field is out of range.
    void validate() const;
};

// Lowest t_min a config may carry; below it theta(t) is no longer monotone
// enough for Gram-point bracketing.
inline constexpr double kLowestTMin = 10.0;

// Riemann-Siegel is used only from here upwards.
inline constexpr double kRiemannSiegelMinT = 200.0;

// The interval [t_start, t_start + width].
struct Window {
    double t_start = 0.0;
    double width = 0.0;

    double t_end() const noexcept { return t_start + width; }
    bool contains(double t) const noexcept { return t >= t_start && t <= t_end(); }

    void validate(const EvalConfig& cfg) const;
};

}  // namespace hardyz
