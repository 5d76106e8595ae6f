// Compensated accumulators and error-free products used by the long sums.
#pragma once

#include <cmath>

#include "hardyz/types.hpp"

namespace hardyz {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(Complex z) noexcept {
        re_.add(z.real());
        im_.add(z.imag());
    }
    CompensatedComplexSum& operator+=(Complex z) noexcept {
        add(z);
        return *this;
    }
    Complex value() const noexcept { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

inline void sin_cos(double x, double& s, double& c) noexcept {
#if defined(__GLIBC__)
    ::sincos(x, &s, &c);
#else
    s = std::sin(x);
    c = std::cos(x);
#endif
}

// a*b == hi + lo exactly.
struct TwoProduct {
    double hi;
    double lo;
};

inline TwoProduct two_prod(double a, double b) noexcept {
    const double hi = a * b;
#if defined(__FMA__) || defined(FP_FAST_FMA)
    return {hi, std::fma(a, b, -hi)};
#else
    // Dekker split.
    constexpr double kSplit = 134217729.0;  // 2^27 + 1
    const double ca = kSplit * a;
    const double ah = ca - (ca - a);
    const double al = a - ah;
    const double cb = kSplit * b;
    const double bh = cb - (cb - b);
    const double bl = b - bh;
    return {hi, ((ah * bh - hi) + ah * bl + al * bh) + al * bl};
#endif
}

}  // namespace hardyz
