// Independent reference computations used only by the tests.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

// Reference values computed with mpmath at 30 digits.
inline constexpr double kLogGamma34Re = -1.7566267846037841105;
inline constexpr double kLogGamma34Im = 4.7426644380346579282;
inline constexpr double kDigammaRe = 3.9120188386885588806;  // psi(0.25 + 50i)
inline constexpr double kDigammaIm = 1.5757964518105263876;
inline constexpr double kZeta100Re = 2.6926198856813240905;  // zeta(1/2 + 100i)
inline constexpr double kZeta100Im = -0.020386029602598161771;
inline constexpr double kZ100 = 2.692697056664463475;
inline constexpr double kZ1000 = 0.99779463752158661399;
inline constexpr double kZ1e4 = -0.34139472423120855918;
inline constexpr double kZ1e5 = 5.8795924686817650415;
inline constexpr double kZ1e6 = -2.8061338784306984787;
inline constexpr double kZPrime1000 = 4.7642936932417062605;
inline constexpr double kZetaPrime2 = -0.9375482543158437537;
inline constexpr double kThetaRoot = 17.845599540410860817;
inline constexpr double kTheta1000 = 2034.5464280380316087;
inline constexpr double kGamma[5] = {14.13472514173469379, 21.022039638771554993, 25.010857580145688763,
                                     30.42487612585951321, 32.935061587739189691};
// Zeros with ordinate in (0, T], counted by mpmath.nzeros.
inline constexpr int kZerosBelow100 = 29;
inline constexpr int kZerosBelow1000 = 649;
inline constexpr int kZerosBelow10000 = 10142;

// zeta(s) through the alternating series with Borwein's acceleration,
// independent of Euler-Maclaurin. Adequate for |Im s| <= 150.
inline Complex zeta_borwein(Complex s, int n = 220) {
    std::vector<long double> d(n + 1);
    long double term = 1.0L / n;  // n (n+i-1)! 4^i / ((n-i)! (2i)!), built incrementally
    long double acc = term;
    d[0] = acc;
    for (int i = 1; i <= n; ++i) {
        term *= 4.0L * (n + i - 1) * (n - i + 1) / ((2.0L * i - 1) * (2.0L * i));
        acc += term;
        d[i] = acc;
    }
    std::complex<long double> sum = 0;
    const std::complex<long double> sl(s.real(), s.imag());
    for (int k = 0; k < n; ++k) {
        const long double sign = (k % 2 == 0) ? 1.0L : -1.0L;
        sum += sign * (d[k] - d[n]) * std::exp(-sl * std::log(static_cast<long double>(k + 1)));
    }
    const std::complex<long double> eta = -sum / d[n];
    const std::complex<long double> factor = 1.0L - std::exp((1.0L - sl) * std::log(2.0L));
    const std::complex<long double> z = eta / factor;
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// Central differences of order 2 and 6.
template <class F>
double diff2(F&& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

template <class F>
double diff6(F&& f, double x, double h) {
    return (45.0 * (f(x + h) - f(x - h)) - 9.0 * (f(x + 2 * h) - f(x - 2 * h)) + (f(x + 3 * h) - f(x - 3 * h))) /
           (60.0 * h);
}

template <class F>
Complex cdiff2(F&& f, Complex z, double h) {
    return (f(z + h) - f(z - h)) / (2.0 * h);
}

// Number of ordered k-tuples of positive integers with product n.
inline unsigned long ordered_factorizations(unsigned long n, int k) {
    if (k == 1) return 1;
    unsigned long count = 0;
    for (unsigned long d = 1; d <= n; ++d) {
        if (n % d == 0) count += ordered_factorizations(n / d, k - 1);
    }
    return count;
}

// Simpson's rule on a uniform grid of 2m panels.
template <class F>
double simpson(F&& f, double a, double b, int m) {
    const double h = (b - a) / (2 * m);
    double s = f(a) + f(b);
    for (int i = 1; i < 2 * m; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

}  // namespace oracle
