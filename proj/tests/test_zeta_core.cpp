#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hardyz/zeta_core.hpp"
#include "oracles.hpp"

using namespace hardyz;

namespace {
const double kPi = std::numbers::pi;
const double kEulerGamma = 0.57721566490153286061;
}

TEST_SUITE("zeta_core") {

TEST_CASE("log_gamma examples") {
    CHECK(std::abs(log_gamma(1.0)) < 1e-15);
    CHECK(log_gamma(0.5).real() == doctest::Approx(0.5 * std::log(kPi)).epsilon(1e-14));
    const Complex v = log_gamma({3.0, 4.0});
    CHECK(v.real() == doctest::Approx(oracle::kLogGamma34Re).epsilon(1e-13));
    CHECK(v.imag() == doctest::Approx(oracle::kLogGamma34Im).epsilon(1e-13));
}

TEST_CASE("log_gamma matches the recurrence and reflection") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> re(-5.3, 20.0);
    std::uniform_real_distribution<double> im(-60.0, 60.0);
    for (int i = 0; i < 100; ++i) {
        const Complex z(re(rng), im(rng));
        // exp(logGamma(z+1) - logGamma(z)) = z
        const Complex ratio = std::exp(log_gamma(z + 1.0) - log_gamma(z));
        CHECK(std::abs(ratio - z) <= 1e-11 * std::abs(z));
    }
}

TEST_CASE("log_gamma poles") {
    CHECK_THROWS_AS(log_gamma(0.0), Error);
    CHECK_THROWS_AS(log_gamma(-3.0), Error);
    try {
        log_gamma({-2.0, 1e-13});
        FAIL("expected pole error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::GammaPole);
    }
    CHECK_NOTHROW(log_gamma({-2.0, 1e-6}));
}

TEST_CASE("digamma examples") {
    CHECK(digamma(1.0).real() == doctest::Approx(-kEulerGamma).epsilon(1e-14));
    CHECK(digamma(2.0).real() == doctest::Approx(1.0 - kEulerGamma).epsilon(1e-14));
    const Complex z(0.25, 50.0);
    const Complex fd = oracle::cdiff2([](Complex w) { return log_gamma(w); }, z, 1e-5);
    CHECK(std::abs(digamma(z) - fd) < 1e-8);
    CHECK(digamma(z).real() == doctest::Approx(oracle::kDigammaRe).epsilon(1e-13));
    CHECK(digamma(z).imag() == doctest::Approx(oracle::kDigammaIm).epsilon(1e-13));
    CHECK_THROWS_AS(digamma(-1.0), Error);
}

TEST_CASE("chi examples") {
    CHECK(std::abs(chi(0.5) - 1.0) < 1e-14);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> sig(0.01, 0.99);
    std::uniform_real_distribution<double> tt(-1e4, 1e4);
    for (int i = 0; i < 100; ++i) {
        const Complex s(sig(rng), tt(rng));
        CHECK(std::abs(chi(s) * chi(1.0 - s) - 1.0) < 1e-10);
    }
    CHECK(std::abs(std::abs(chi({0.5, 1000.0})) - 1.0) < 1e-10);
}

TEST_CASE("chi_log_deriv examples") {
    CHECK(std::abs(chi_log_deriv({0.5, 1000.0}).real() + std::log(1000.0 / (2 * kPi))) < 2e-3);
    CHECK(std::abs(chi_log_deriv({0.5, 10000.0}) + std::log(10000.0 / (2 * kPi))) < 2e-4);
    CHECK(std::abs(chi_log_deriv(0.5).imag()) < 1e-12);
    // chi'/chi is the log-derivative of chi.
    const Complex s(0.3, 77.0);
    const Complex fd = oracle::cdiff2([](Complex w) { return std::log(chi(w)); }, s, 1e-5);
    CHECK(std::abs(chi_log_deriv(s) - fd) < 1e-8);
}

TEST_CASE("chi_log_deriv approaches -log(t/2pi) like 1/t") {
    for (double t : {1e2, 1e3, 1e4, 1e5}) {
        const double gap = std::abs(chi_log_deriv({0.5, t}) + std::log(t / (2 * kPi)));
        CHECK(t * gap <= 10.0);
    }
}

TEST_CASE("rs_theta examples") {
    // Bisection oracle on the implemented theta.
    double lo = 17.0;
    double hi = 18.0;
    for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
        const double mid = 0.5 * (lo + hi);
        (rs_theta(mid) < 0.0 ? lo : hi) = mid;
    }
    CHECK(lo == doctest::Approx(oracle::kThetaRoot).epsilon(1e-12));
    const double t = 1000.0;
    const double asym = t / 2 * std::log(t / (2 * kPi)) - t / 2 - kPi / 8;
    CHECK(std::fabs(rs_theta(t) - asym) <= 1.0 / (40 * t));
    CHECK(rs_theta(t) == doctest::Approx(oracle::kTheta1000).epsilon(1e-14));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> tt(100.0, 1e6);
    for (int i = 0; i < 50; ++i) {
        const double x = tt(rng);
        CHECK(std::abs(std::exp(Complex(0, 2 * rs_theta(x))) * chi({0.5, x}) - 1.0) < 1e-9);
    }
}

TEST_CASE("rs_theta_deriv matches finite differences") {
    for (double t : {20.0, 300.0, 5e4}) {
        const double fd = oracle::diff6([](double x) { return rs_theta(x); }, t, 1e-3);
        CHECK(rs_theta_deriv(t) == doctest::Approx(fd).epsilon(1e-8));
    }
    // Far out the difference quotient loses too many digits; use the asymptotic series.
    for (double t : {2e6, 5e7}) {
        const double series = 0.5 * std::log(t / (2 * kPi)) + 1.0 / (48 * t * t) + 7.0 / (1920 * std::pow(t, 4));
        CHECK(rs_theta_deriv(t) == doctest::Approx(series).epsilon(1e-14));
    }
}

TEST_CASE("zeta_em examples") {
    const EvalConfig cfg;
    CHECK(zeta_em(2.0, cfg).real() == doctest::Approx(kPi * kPi / 6).epsilon(cfg.target_rel_error));
    CHECK(std::abs(zeta_em(0.0, cfg) + 0.5) < 1e-14);
    const Complex z = zeta_em({0.5, 100.0}, cfg);
    CHECK(z.real() == doctest::Approx(oracle::kZeta100Re).epsilon(1e-11));
    CHECK(z.imag() == doctest::Approx(oracle::kZeta100Im).epsilon(1e-9));
    CHECK(std::abs(z) == doctest::Approx(oracle::kZ100).epsilon(1e-11));
}

TEST_CASE("zeta_em agrees with the accelerated alternating series") {
    const EvalConfig cfg;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> sig(-0.5, 2.5);
    std::uniform_real_distribution<double> tt(-120.0, 120.0);
    for (int i = 0; i < 60; ++i) {
        const Complex s(sig(rng), tt(rng));
        const Complex ref = oracle::zeta_borwein(s);
        CHECK(std::abs(zeta_em(s, cfg) - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("zeta_em errors") {
    const EvalConfig cfg;
    try {
        zeta_em(1.0, cfg);
        FAIL("expected pole");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZetaPole);
    }
    try {
        zeta_em({0.5, 2e8}, cfg);
        FAIL("expected precision error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PrecisionUnattainable);
    }
}

TEST_CASE("zeta_deriv_em examples") {
    const EvalConfig cfg;
    auto z = [&cfg](Complex s) { return zeta_em(s, cfg); };
    CHECK(std::abs(zeta_deriv_em(2.0, cfg) - oracle::cdiff2(z, Complex(2.0), 1e-6)) < 1e-8);
    CHECK(zeta_deriv_em(2.0, cfg).real() == doctest::Approx(oracle::kZetaPrime2).epsilon(1e-12));
    const Complex s(0.5, 50.0);
    CHECK(std::abs(zeta_deriv_em(s, cfg) - oracle::cdiff2(z, s, 1e-6)) < 1e-8);
    CHECK(zeta_deriv_em(0.0, cfg).real() == doctest::Approx(-0.5 * std::log(2 * kPi)).epsilon(10 * cfg.target_rel_error));
}

TEST_CASE("conjugate symmetry") {
    const EvalConfig cfg;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> sig(0.5, 2.0);
    std::uniform_real_distribution<double> tt(50.0, 1e4);
    for (int i = 0; i < 100; ++i) {
        const Complex s(sig(rng), tt(rng));
        const Complex c = std::conj(s);
        auto close = [](Complex a, Complex b) { return std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)); };
        CHECK(close(chi(c), std::conj(chi(s))));
        CHECK(close(zeta_em(c, cfg), std::conj(zeta_em(s, cfg))));
        CHECK(close(zeta_deriv_em(c, cfg), std::conj(zeta_deriv_em(s, cfg))));
        CHECK(close(chi_log_deriv(c), std::conj(chi_log_deriv(s))));
    }
}

TEST_CASE("functional equation") {
    const EvalConfig cfg;
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> sig(0.01, 0.99);
    std::uniform_real_distribution<double> tt(50.0, 1e4);
    for (int i = 0; i < 100; ++i) {
        const Complex s(sig(rng), tt(rng));
        const Complex z = zeta_em(s, cfg);
        CHECK(std::abs(z - chi(s) * zeta_em(1.0 - s, cfg)) <= 1e-8 * std::abs(z));
    }
}

TEST_CASE("outputs stay finite") {
    const EvalConfig cfg;
    for (double t : {50.0, 1e3, 1e5, 1e7}) {
        const Complex s(0.5, t);
        CHECK(std::isfinite(std::abs(zeta_em(s, cfg))));
        CHECK(std::isfinite(std::abs(chi(s))));
        CHECK(std::isfinite(rs_theta(t)));
    }
}

TEST_CASE("EvalConfig validation") {
    EvalConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.target_rel_error = 1e-2;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = EvalConfig{};
    cfg.rs_correction_terms = 3;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = EvalConfig{};
    cfg.t_min = 5.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
}

}
