#include "hardyz/rs_coefficients.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "hardyz/types.hpp"

namespace hardyz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxOrder = 7;
constexpr int kTaylorTerms = 72;
constexpr int kContourPoints = 256;

// Taylor coefficients of f(x) = Psi(1/2 + x) = -cos(2 pi x^2 - 5 pi / 8) / cos(2 pi x)
// about x = 0. f is entire (every zero of the denominator is a zero of the
// numerator), so a discrete Cauchy integral on |x| = 1 gives the coefficients
// to roughly max|f| * eps. Derivative tables for orders 0..7 are stored so
// that evaluation is a single Horner pass.
class PsiSeries {
public:
    PsiSeries() {
        std::vector<std::complex<double>> samples(kContourPoints);
        for (int m = 0; m < kContourPoints; ++m) {
            const double phi = 2.0 * kPi * m / kContourPoints;
            const std::complex<double> x = std::polar(1.0, phi);
            samples[m] = -std::cos(2.0 * kPi * x * x - 5.0 * kPi / 8.0) / std::cos(2.0 * kPi * x);
        }
        std::vector<double> coeff(kTaylorTerms, 0.0);
        for (int n = 0; n < kTaylorTerms; n += 2) {  // f is even
            std::complex<double> acc = 0.0;
            for (int m = 0; m < kContourPoints; ++m) {
                const double phi = 2.0 * kPi * m / kContourPoints;
                acc += samples[m] * std::polar(1.0, -n * phi);
            }
            coeff[n] = acc.real() / kContourPoints;
        }
        for (int order = 0; order <= kMaxOrder; ++order) {
            auto& table = derivs_[order];
            table.assign(kTaylorTerms - order, 0.0);
            for (int n = order; n < kTaylorTerms; ++n) {
                double falling = 1.0;
                for (int i = 0; i < order; ++i) falling *= static_cast<double>(n - i);
                table[n - order] = falling * coeff[n];
            }
        }
    }

    double eval(double x, int order) const {
        const auto& table = derivs_[order];
        double acc = 0.0;
        for (auto it = table.rbegin(); it != table.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

private:
    std::array<std::vector<double>, kMaxOrder + 1> derivs_;
};

const PsiSeries& psi_series() {
    static const PsiSeries series;
    return series;
}

}  // namespace

double rs_psi_derivative(double p, int order) {
    if (order < 0 || order > kMaxOrder) {
        throw Error(ErrorCode::InvalidArgument, "Psi derivative order must lie in [0, 7]");
    }
    return psi_series().eval(p - 0.5, order);
}

RsCoefficients rs_coefficients(double p, int depth) {
    const PsiSeries& psi = psi_series();
    const double x = p - 0.5;
    RsCoefficients out;
    out.c[0] = psi.eval(x, 0);
    out.dc[0] = psi.eval(x, 1);
    if (depth >= 1) {
        const double k1 = 1.0 / (96.0 * kPi * kPi);
        out.c[1] = -psi.eval(x, 3) * k1;
        out.dc[1] = -psi.eval(x, 4) * k1;
    }
    if (depth >= 2) {
        const double k2a = 1.0 / (64.0 * kPi * kPi);
        const double k2b = 1.0 / (18432.0 * kPi * kPi * kPi * kPi);
        out.c[2] = psi.eval(x, 2) * k2a + psi.eval(x, 6) * k2b;
        out.dc[2] = psi.eval(x, 3) * k2a + psi.eval(x, 7) * k2b;
    }
    return out;
}

}  // namespace hardyz
