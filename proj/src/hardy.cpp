#include "hardyz/hardy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hardyz/rs_coefficients.hpp"
#include "hardyz/summation.hpp"
#include "hardyz/zeta_core.hpp"

namespace hardyz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_domain(double t, const EvalConfig& cfg, const char* what) {
    if (!std::isfinite(t)) throw Error(ErrorCode::NonFinite, std::string(what) + ": non-finite t");
    if (t < cfg.t_min || t > cfg.t_max) {
        std::ostringstream os;
        os << what << ": t = " << t << " outside [" << cfg.t_min << ", " << cfg.t_max << "]";
        throw Error(ErrorCode::Domain, os.str());
    }
}

void check_rs_domain(double t, const EvalConfig& cfg) {
    check_domain(t, cfg, "hardy_z_rs");
    if (t < kRiemannSiegelMinT) {
        throw Error(ErrorCode::Domain, "Riemann-Siegel route needs t >= 200");
    }
}

// log n and 2/sqrt(n) for every main-sum index reachable below t = 1e8.
struct MainSumTables {
    static constexpr std::size_t kSize = 4096;
    std::array<double, kSize + 1> log_n{};
    std::array<double, kSize + 1> weight{};
    MainSumTables() {
        for (std::size_t n = 1; n <= kSize; ++n) {
            log_n[n] = std::log(static_cast<double>(n));
            weight[n] = 2.0 / std::sqrt(static_cast<double>(n));
        }
    }
};

const MainSumTables& main_sum_tables() {
    static const MainSumTables tables;
    return tables;
}

bool use_oracle(double t, const EvalConfig& cfg) {
    return cfg.prefer_oracle || t < kRiemannSiegelMinT;
}

// Z and optionally Z' from the Riemann-Siegel formula
//   Z(t) = 2 sum_{n<=N} n^{-1/2} cos(theta - t log n)
//          + (-1)^{N-1} a^{-1/2} sum_j C_j(p) a^{-j},   a = sqrt(t/2pi), p = a - N.
HardyJet rs_impl(double t, const EvalConfig& cfg, bool want_deriv) {
    check_rs_domain(t, cfg);
    const double theta = rs_theta(t);
    const double dtheta = want_deriv ? rs_theta_deriv(t) : 0.0;
    const double a = std::sqrt(t / kTwoPi);
    const std::size_t big_n = rs_main_terms(t);

    const MainSumTables& tables = main_sum_tables();
    CompensatedSum zsum;
    CompensatedSum dsum;
    for (std::size_t n = 1; n <= big_n; ++n) {
        const double log_n = tables.log_n[n];
        const TwoProduct tl = two_prod(t, log_n);
        const double arg = (theta - tl.hi) - tl.lo;
        const double w = tables.weight[n];
        if (want_deriv) {
            double sn = 0.0;
            double cs = 0.0;
            sin_cos(arg, sn, cs);
            zsum += w * cs;
            dsum += -w * sn * (dtheta - log_n);
        } else {
            zsum += w * std::cos(arg);
        }
    }

    const int depth = cfg.rs_correction_terms;
    const double p = a - static_cast<double>(big_n);
    const RsCoefficients coeff = rs_coefficients(p, depth);
    const double sign = (big_n % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}
    double rem = 0.0;
    double drem_da = 0.0;
    double a_pow = 1.0 / std::sqrt(a);  // a^{-1/2 - j}
    for (int j = 0; j <= depth; ++j) {
        rem += coeff.c[j] * a_pow;
        drem_da += coeff.dc[j] * a_pow - (0.5 + j) * coeff.c[j] * a_pow / a;
        a_pow /= a;
    }
    zsum += sign * rem;
    if (want_deriv) {
        const double da_dt = 1.0 / (2.0 * kTwoPi * a);
        dsum += sign * drem_da * da_dt;
    }
    return {t, zsum.value(), dsum.value(), Method::RiemannSiegel};
}

}  // namespace

const char* to_string(Method m) {
    return m == Method::RiemannSiegel ? "riemann-siegel" : "euler-maclaurin";
}

std::size_t rs_main_terms(double t) {
    return static_cast<std::size_t>(std::floor(std::sqrt(t / kTwoPi)));
}

HardyValue hardy_z_rs(double t, const EvalConfig& cfg) {
    const HardyJet j = rs_impl(t, cfg, false);
    return {t, j.z, Method::RiemannSiegel, 0.0};
}

HardyValue hardy_z_em(double t, const EvalConfig& cfg) {
    check_domain(t, cfg, "hardy_z");
    const Complex zeta = zeta_em(Complex(0.5, t), cfg);
    const Complex rotated = std::polar(1.0, rs_theta(t)) * zeta;
    return {t, rotated.real(), Method::EulerMaclaurin, std::fabs(rotated.imag())};
}

HardyValue hardy_z(double t, const EvalConfig& cfg) {
    return use_oracle(t, cfg) ? hardy_z_em(t, cfg) : hardy_z_rs(t, cfg);
}

HardyJet hardy_jet_rs(double t, const EvalConfig& cfg) { return rs_impl(t, cfg, true); }

HardyJet hardy_jet_em(double t, const EvalConfig& cfg) {
    check_domain(t, cfg, "hardy_jet");
    const Complex s(0.5, t);
    const ZetaPair zp = zeta_and_deriv_em(s, cfg);
    const Complex rot = std::polar(1.0, rs_theta(t));
    const Complex z1v = zp.deriv - 0.5 * chi_log_deriv(s) * zp.zeta;
    const double z = (rot * zp.zeta).real();
    // Z'(t) = i e^{i theta} Z1(1/2 + it)
    const double dz = -(rot * z1v).imag();
    return {t, z, dz, Method::EulerMaclaurin};
}

HardyJet hardy_jet(double t, const EvalConfig& cfg) {
    return use_oracle(t, cfg) ? hardy_jet_em(t, cfg) : hardy_jet_rs(t, cfg);
}

Z1Value z1(Complex s, const EvalConfig& cfg) {
    const ZetaPair zp = zeta_and_deriv_em(s, cfg);
    return {s, zp.deriv - 0.5 * chi_log_deriv(s) * zp.zeta};
}

double hardy_z_deriv(double t, const EvalConfig& cfg) { return hardy_jet(t, cfg).dz; }

double phase_noise(double t) {
    return std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(rs_theta(t)));
}

double zeta_deriv_abs_critical(double t, const EvalConfig& cfg) {
    const HardyJet j = hardy_jet(t, cfg);
    const double dtheta = rs_theta_deriv(t);
    return std::hypot(j.dz, dtheta * j.z);
}

}  // namespace hardyz
