// Hardy's function Z(t) = exp(i theta(t)) zeta(1/2 + it), its derivative,
// and Z1(s) = zeta'(s) - chi'(s)/(2 chi(s)) zeta(s).
//
// Two evaluation routes exist. The Riemann-Siegel route (t >= 200) is the
// fast path used by every scan and integrand; the Euler-Maclaurin route is
// the accuracy reference and is used below 200 or when
// EvalConfig::prefer_oracle is set. On the critical line
// Z'(t) = i exp(i theta(t)) Z1(1/2 + it), which is exactly real.
#pragma once

#include <cstddef>

#include "hardyz/types.hpp"

namespace hardyz {

enum class Method { RiemannSiegel, EulerMaclaurin };

const char* to_string(Method m);

struct HardyValue {
    double t = 0.0;
    double z = 0.0;
    Method method = Method::RiemannSiegel;
    // |Im(exp(i theta) zeta(1/2+it))|; zero on the Riemann-Siegel route.
    double imag_residual = 0.0;
};

// Z and Z' evaluated together.
struct HardyJet {
    double t = 0.0;
    double z = 0.0;
    double dz = 0.0;
    Method method = Method::RiemannSiegel;
};

struct Z1Value {
    Complex s;
    Complex value;
};

// floor(sqrt(t / 2 pi)), the Riemann-Siegel main-sum length.
std::size_t rs_main_terms(double t);

HardyValue hardy_z(double t, const EvalConfig& cfg);
HardyValue hardy_z_rs(double t, const EvalConfig& cfg);
HardyValue hardy_z_em(double t, const EvalConfig& cfg);

HardyJet hardy_jet(double t, const EvalConfig& cfg);
// Z' here is the exact t-derivative of the Riemann-Siegel approximant.
HardyJet hardy_jet_rs(double t, const EvalConfig& cfg);
HardyJet hardy_jet_em(double t, const EvalConfig& cfg);

Z1Value z1(Complex s, const EvalConfig& cfg);

// Signed Z'(t). Its magnitude equals |Z1(1/2+it)|.
double hardy_z_deriv(double t, const EvalConfig& cfg);

// Relative rounding noise of Z near t: machine epsilon times the phase theta(t).
double phase_noise(double t);

// |zeta'(1/2+it)| = sqrt(Z'^2 + theta'^2 Z^2), from the jet of Z.
double zeta_deriv_abs_critical(double t, const EvalConfig& cfg);

}  // namespace hardyz
