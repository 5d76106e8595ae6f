#include "hardyz/zeta_core.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hardyz/summation.hpp"

namespace hardyz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLogPi = 1.1447298858494002;      // log(pi)
constexpr double kHalfLog2Pi = 0.91893853320467274;  // log(2 pi)/2

// Bernoulli numbers B_2, B_4, ..., B_24.
constexpr std::array<double, 12> kBernoulli = {
    1.0 / 6.0,          -1.0 / 30.0,     1.0 / 42.0,        -1.0 / 30.0,
    5.0 / 66.0,         -691.0 / 2730.0, 7.0 / 6.0,         -3617.0 / 510.0,
    43867.0 / 798.0,    -174611.0 / 330.0, 854513.0 / 138.0, -236364091.0 / 2730.0,
};

// Below this modulus (or for negative real part) the argument is shifted
// upward before the asymptotic series is applied.
constexpr double kStirlingRadius = 10.0;

void require_finite(Complex z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error(ErrorCode::NonFinite, std::string(what) + ": non-finite argument");
    }
}

void check_gamma_pole(Complex z) {
    const double re = z.real();
    if (re > 0.5) return;
    const double nearest = std::round(re);
    if (std::abs(z - Complex(nearest, 0.0)) < 1e-12) {
        std::ostringstream os;
        os << "Gamma has a pole at " << nearest;
        throw Error(ErrorCode::GammaPole, os.str());
    }
}

Complex stirling_log_gamma(Complex w) {
    const Complex inv = 1.0 / w;
    const Complex inv2 = inv * inv;
    Complex series = 0.0;
    Complex power = inv;
    for (std::size_t j = 0; j < kBernoulli.size(); ++j) {
        const double twoj = 2.0 * static_cast<double>(j + 1);
        series += kBernoulli[j] / (twoj * (twoj - 1.0)) * power;
        power *= inv2;
    }
    return (w - 0.5) * std::log(w) - w + kHalfLog2Pi + series;
}

Complex asymptotic_digamma(Complex w) {
    const Complex inv = 1.0 / w;
    const Complex inv2 = inv * inv;
    Complex series = 0.0;
    Complex power = inv2;
    for (std::size_t j = 0; j < kBernoulli.size(); ++j) {
        const double twoj = 2.0 * static_cast<double>(j + 1);
        series += kBernoulli[j] / twoj * power;
        power *= inv2;
    }
    return std::log(w) - 0.5 * inv - series;
}

bool needs_shift(Complex w) { return w.real() < 0.0 || std::abs(w) < kStirlingRadius; }

// Ratios c_j / c_{j-1} with c_j = B_{2j}/(2j)! = (-1)^(j+1) 2 zeta(2j) / (2 pi)^(2j).
constexpr int kMaxEmTerms = 200;

const std::array<double, kMaxEmTerms + 2>& bernoulli_ratios() {
    static const std::array<double, kMaxEmTerms + 2> table = [] {
        std::array<double, kMaxEmTerms + 2> zeta_even{};
        zeta_even[1] = kPi * kPi / 6.0;
        for (int j = 2; j <= kMaxEmTerms + 1; ++j) {
            // Direct sum to 99 with an Euler-Maclaurin tail from 100.
            const double e = 2.0 * j;
            double s = 0.0;
            for (int n = 99; n >= 1; --n) s += std::pow(static_cast<double>(n), -e);
            const double big_n = 100.0;
            s += std::pow(big_n, 1.0 - e) / (e - 1.0) + 0.5 * std::pow(big_n, -e) +
                 e / 12.0 * std::pow(big_n, -e - 1.0) - e * (e + 1) * (e + 2) / 720.0 * std::pow(big_n, -e - 3.0);
            zeta_even[j] = s;
        }
        std::array<double, kMaxEmTerms + 2> ratio{};
        ratio[0] = 0.0;
        ratio[1] = 1.0 / 12.0;  // c_1 itself
        for (int j = 2; j <= kMaxEmTerms + 1; ++j) {
            ratio[j] = -zeta_even[j] / zeta_even[j - 1] / (4.0 * kPi * kPi);
        }
        return ratio;
    }();
    return table;
}

}  // namespace

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid-argument";
        case ErrorCode::Domain: return "domain";
        case ErrorCode::GammaPole: return "gamma-pole";
        case ErrorCode::ZetaPole: return "zeta-pole";
        case ErrorCode::PrecisionUnattainable: return "precision-unattainable";
        case ErrorCode::NonFinite: return "non-finite";
        case ErrorCode::MissedZeros: return "suspected-missed-zeros";
        case ErrorCode::InterlacingViolation: return "interlacing-violation";
        case ErrorCode::ToleranceUnmet: return "tolerance-unmet";
        case ErrorCode::TableMismatch: return "table-mismatch";
        case ErrorCode::Overflow: return "overflow";
        case ErrorCode::Io: return "io";
    }
    return "unknown";
}

void EvalConfig::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); };
    if (!(target_rel_error > 0.0 && target_rel_error < 1e-3)) {
        fail("target_rel_error must lie in (0, 1e-3)");
    }
    if (em_max_terms < 1 || em_max_terms > kMaxEmTerms) {
        fail("em_max_terms must lie in [1, " + std::to_string(kMaxEmTerms) + "]");
    }
    if (rs_correction_terms < 0 || rs_correction_terms > 2) {
        fail("rs_correction_terms must lie in [0, 2]");
    }
    if (!(t_min >= kLowestTMin)) fail("t_min must be at least 10");
    if (!(t_max > t_min && t_max <= 1e8)) fail("t_max must lie in (t_min, 1e8]");
}

void Window::validate(const EvalConfig& cfg) const {
    if (!std::isfinite(t_start) || !std::isfinite(width)) {
        throw Error(ErrorCode::InvalidArgument, "window bounds must be finite");
    }
    if (!(width > 0.0)) throw Error(ErrorCode::InvalidArgument, "window width must be positive");
    if (t_start < cfg.t_min) {
        throw Error(ErrorCode::Domain, "window starts below t_min");
    }
    if (t_end() > cfg.t_max) throw Error(ErrorCode::Domain, "window ends above t_max");
}

Complex log_gamma(Complex z) {
    require_finite(z, "log_gamma");
    check_gamma_pole(z);
    Complex w = z;
    Complex shift = 0.0;
    while (needs_shift(w)) {
        shift += std::log(w);
        w += 1.0;
    }
    return stirling_log_gamma(w) - shift;
}

Complex digamma(Complex z) {
    require_finite(z, "digamma");
    check_gamma_pole(z);
    Complex w = z;
    Complex shift = 0.0;
    while (needs_shift(w)) {
        shift += 1.0 / w;
        w += 1.0;
    }
    return asymptotic_digamma(w) - shift;
}

Complex chi(Complex s) {
    require_finite(s, "chi");
    const Complex log_chi = log_gamma(0.5 * (1.0 - s)) - log_gamma(0.5 * s) + (s - 0.5) * kLogPi;
    return std::exp(log_chi);
}

Complex chi_log_deriv(Complex s) {
    require_finite(s, "chi_log_deriv");
    return -0.5 * digamma(0.5 * (1.0 - s)) - 0.5 * digamma(0.5 * s) + kLogPi;
}

double rs_theta(double t) {
    if (!std::isfinite(t)) throw Error(ErrorCode::NonFinite, "rs_theta: non-finite argument");
    return log_gamma(Complex(0.25, 0.5 * t)).imag() - 0.5 * t * kLogPi;
}

double rs_theta_deriv(double t) {
    if (!std::isfinite(t)) throw Error(ErrorCode::NonFinite, "rs_theta_deriv: non-finite argument");
    return 0.5 * digamma(Complex(0.25, 0.5 * t)).real() - 0.5 * kLogPi;
}

long em_main_terms(Complex s) {
    return std::max<long>(20, static_cast<long>(std::ceil(std::abs(s) / 4.0)));
}

namespace {

// n^{-s} for n >= 1 with the phase t*log(n) formed without rounding error.
inline Complex power_neg_s(double log_n, double n, double sigma, double t) {
    const double mag = sigma == 0.5 ? 1.0 / std::sqrt(n) : std::exp(-sigma * log_n);
    const TwoProduct phase = two_prod(t, log_n);
    double sn = 0.0;
    double c = 0.0;
    sin_cos(phase.hi, sn, c);
    return {mag * (c - phase.lo * sn), -mag * (sn + phase.lo * c)};
}

ZetaPair em_impl(Complex s, const EvalConfig& cfg, bool want_deriv) {
    require_finite(s, "zeta_em");
    if (std::abs(s - 1.0) < 1e-14) throw Error(ErrorCode::ZetaPole, "zeta has a pole at s = 1");
    if (std::fabs(s.imag()) > cfg.t_max) {
        throw Error(ErrorCode::PrecisionUnattainable, "|Im s| exceeds t_max");
    }
    const double sigma = s.real();
    const double t = s.imag();
    const long big_n = em_main_terms(s);

    CompensatedComplexSum zsum;
    CompensatedComplexSum dsum;
    for (long n = 1; n < big_n; ++n) {
        const double dn = static_cast<double>(n);
        const double log_n = std::log(dn);
        const Complex term = power_neg_s(log_n, dn, sigma, t);
        zsum += term;
        if (want_deriv) dsum += -log_n * term;
    }

    const double dn = static_cast<double>(big_n);
    const double log_nn = std::log(dn);
    const Complex pow_n = power_neg_s(log_nn, dn, sigma, t);  // N^{-s}
    const Complex pow_n1 = dn * pow_n;                       // N^{1-s}
    const Complex sm1 = s - 1.0;
    zsum += pow_n1 / sm1;
    zsum += 0.5 * pow_n;
    if (want_deriv) {
        dsum += -log_nn * pow_n1 / sm1 - pow_n1 / (sm1 * sm1);
        dsum += -0.5 * log_nn * pow_n;
    }

    // Bernoulli tail: T_j = c_j s(s+1)...(s+2j-2) N^{-s-2j+1}.
    const auto& ratio = bernoulli_ratios();
    const double inv_n2 = 1.0 / (dn * dn);
    Complex term = ratio[1] * s * pow_n / dn;
    Complex dterm = ratio[1] * pow_n / dn * (1.0 - s * log_nn);
    bool converged = false;
    for (int j = 1; j <= cfg.em_max_terms; ++j) {
        zsum += term;
        if (want_deriv) dsum += dterm;

        const double a = 2.0 * j - 1.0;  // next factors are (s + 2j - 1)(s + 2j)
        const Complex q = (s + a) * (s + a + 1.0);
        const Complex dq = 2.0 * s + 2.0 * a + 1.0;
        const double r = ratio[j + 1] * inv_n2;
        const Complex next = r * q * term;
        const Complex dnext = r * (dq * term + q * dterm);

        const double factor = std::abs(s + a + 2.0) / std::max(1.0, sigma + a + 2.0);
        const double tol = 0.01 * cfg.target_rel_error;
        const bool z_ok = std::abs(next) * factor <= tol * std::max(1.0, std::abs(zsum.value()));
        const bool d_ok = !want_deriv ||
                          std::abs(dnext) * factor <= tol * std::max(1.0, std::abs(dsum.value()));
        term = next;
        dterm = dnext;
        if (z_ok && d_ok) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        std::ostringstream os;
        os << "Euler-Maclaurin tail did not converge within " << cfg.em_max_terms
           << " terms at s = " << s;
        throw Error(ErrorCode::PrecisionUnattainable, os.str());
    }
    return {zsum.value(), dsum.value()};
}

}  // namespace

Complex zeta_em(Complex s, const EvalConfig& cfg) { return em_impl(s, cfg, false).zeta; }

Complex zeta_deriv_em(Complex s, const EvalConfig& cfg) { return em_impl(s, cfg, true).deriv; }

ZetaPair zeta_and_deriv_em(Complex s, const EvalConfig& cfg) { return em_impl(s, cfg, true); }

}  // namespace hardyz
