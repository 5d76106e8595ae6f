// Gamma-family functions, the functional-equation factor chi(s), the
// Riemann-Siegel phase theta(t) and the Euler-Maclaurin reference evaluator
// for zeta(s) and zeta'(s).
//
// Every function here is pure; EvalConfig is read-only.
#pragma once

#include "hardyz/types.hpp"

namespace hardyz {

// Principal branch of log Gamma(z). Throws GammaPole near 0, -1, -2, ...
Complex log_gamma(Complex z);

// Gamma'(z)/Gamma(z).
Complex digamma(Complex z);

// chi(s) = Gamma((1-s)/2) / Gamma(s/2) * pi^(s-1/2), so that zeta(s) = chi(s) zeta(1-s).
Complex chi(Complex s);

// chi'(s)/chi(s) = -psi((1-s)/2)/2 - psi(s/2)/2 + log(pi).
Complex chi_log_deriv(Complex s);

// Continuous Riemann-Siegel phase, chi(1/2+it) = exp(-2i theta(t)).
double rs_theta(double t);

// theta'(t) = Re psi(1/4 + it/2)/2 - log(pi)/2.
double rs_theta_deriv(double t);

struct ZetaPair {
    Complex zeta;
    Complex deriv;
};

// Number of directly summed terms used by the Euler-Maclaurin evaluator at s.
long em_main_terms(Complex s);

// zeta(s) by Euler-Maclaurin summation. Throws ZetaPole at s = 1 and
// PrecisionUnattainable when |Im s| > t_max or the Bernoulli tail does not
// reach the configured accuracy.
Complex zeta_em(Complex s, const EvalConfig& cfg);

// zeta'(s) by the term-wise differentiated Euler-Maclaurin sum.
Complex zeta_deriv_em(Complex s, const EvalConfig& cfg);

// Both at once; shares the main sum.
ZetaPair zeta_and_deriv_em(Complex s, const EvalConfig& cfg);

}  // namespace hardyz
