// Riemann-Siegel correction coefficients C_0..C_2 and their p-derivatives,
// built from Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p).
#pragma once

#include <array>

namespace hardyz {

struct RsCoefficients {
    std::array<double, 3> c{};   // C_0(p), C_1(p), C_2(p)
    std::array<double, 3> dc{};  // dC_j/dp
};

// p in [0, 1); depth in 0..2 selects how many coefficients are filled.
RsCoefficients rs_coefficients(double p, int depth);

// d^order Psi / dp^order at p, order in 0..7.
double rs_psi_derivative(double p, int order);

}  // namespace hardyz
