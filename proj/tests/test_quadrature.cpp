#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "hardyz/hardy.hpp"
#include "hardyz/quadrature.hpp"
#include "hardyz/zeros.hpp"
#include "oracles.hpp"

using namespace hardyz;

TEST_SUITE("quadrature") {

TEST_CASE("constant integrand") {
    const MomentEstimate m = integrate_adaptive([](double) { return 1.0; }, Window{1e5, 1.0}, 1e-12);
    CHECK(m.value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.abs_error_estimate < 1e-14);
    CHECK(m.panels == 1);
    CHECK(m.evals == 15);
}

TEST_CASE("full periods of cos(50 t)") {
    const double tol = 1e-10;
    const double t0 = 1e3;
    const double w = 2 * std::numbers::pi * 40 / 50;
    std::vector<double> cuts;
    for (int i = 1; i < 40; ++i) cuts.push_back(t0 + w * i / 40);
    const MomentEstimate m = integrate_adaptive([](double t) { return std::cos(50 * t); }, Window{t0, w}, tol, cuts);
    CHECK(std::fabs(m.value) <= tol * w);
    const MomentEstimate bare = integrate_adaptive([](double t) { return std::cos(50 * t); }, Window{t0, w}, tol);
    CHECK(std::fabs(bare.value) <= tol * w);
}

TEST_CASE("polynomials are exact") {
    // K15 integrates degree 22 exactly.
    auto f = [](double x) { return std::pow(x, 20) - 3 * std::pow(x, 7); };
    const MomentEstimate m = integrate_adaptive(f, Window{0.0, 1.0}, 1e-14);
    CHECK(m.value == doctest::Approx(1.0 / 21 - 3.0 / 8).epsilon(1e-14));
}

TEST_CASE("kinked integrand with and without breakpoints") {
    auto f = [](double x) { return std::fabs(x - 0.3); };
    const double exact = 0.5 * (0.09 + 0.49);
    const double cut[] = {0.3};
    const MomentEstimate with = integrate_adaptive(f, Window{0.0, 1.0}, 1e-12, cut);
    const MomentEstimate without = integrate_adaptive(f, Window{0.0, 1.0}, 1e-8);
    CHECK(with.value == doctest::Approx(exact).epsilon(1e-14));
    CHECK(without.value == doctest::Approx(exact).epsilon(1e-8));
    CHECK(with.panels < without.panels);
}

TEST_CASE("|Z|^2 with and without zero breakpoints") {
    const EvalConfig cfg;
    const Window w{1e5, 10.0};
    const double tol = 1e-9;
    auto f = [&cfg](double t) {
        const double z = hardy_z(t, cfg).z;
        return z * z;
    };
    std::vector<double> zeros;
    for (const auto& r : locate_zeros(w, cfg).records) {
        if (r.gamma < w.t_end()) zeros.push_back(r.gamma);
    }
    const MomentEstimate with = integrate_adaptive(f, w, tol, zeros);
    const MomentEstimate without = integrate_adaptive(f, w, tol);
    CHECK(std::fabs(with.value - without.value) <= 2 * tol * w.width);
    const double ref = oracle::simpson(f, w.t_start, w.t_end(), 20000);
    CHECK(with.value == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("breakpoint validation") {
    auto f = [](double) { return 1.0; };
    const double outside[] = {5.0};
    CHECK_THROWS_AS(integrate_adaptive(f, Window{0.0, 1.0}, 1e-10, outside), Error);
    const double unsorted[] = {0.5, 0.2};
    CHECK_THROWS_AS(integrate_adaptive(f, Window{0.0, 1.0}, 1e-10, unsorted), Error);
    const double ends[] = {0.0, 0.5, 0.5, 1.0};
    CHECK(integrate_adaptive(f, Window{0.0, 1.0}, 1e-10, ends).value == doctest::Approx(1.0));
    CHECK_THROWS_AS(integrate_adaptive(f, Window{0.0, 1.0}, 0.0), Error);
}

TEST_CASE("errors") {
    try {
        integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, Window{0.0, 1.0}, 1e-14);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK((e.code() == ErrorCode::NonFinite || e.code() == ErrorCode::ToleranceUnmet));
    }
    try {
        integrate_adaptive([](double x) { return x < 0.5 ? 0.0 : std::numeric_limits<double>::quiet_NaN(); },
                           Window{0.0, 1.0}, 1e-10);
        FAIL("expected non-finite error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonFinite);
    }
    try {
        QuadOptions opts;
        opts.abs_tol_per_length = 1e-14;
        opts.max_depth = 3;
        integrate_adaptive([](double x) { return std::sin(1000 * x); }, 0.0, 10.0, {}, opts);
        FAIL("expected tolerance error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ToleranceUnmet);
    }
}

TEST_CASE("noise floor and panel budget") {
    // A deterministic jitter of relative size 1e-9 defeats a 1e-12 tolerance.
    auto noisy = [](double x) {
        const double jitter = std::sin(1e9 * x) * 1e-9;
        return (2.0 + std::cos(x)) * (1.0 + jitter);
    };
    QuadOptions opts;
    opts.abs_tol_per_length = 1e-12;
    opts.max_panels = 4096;
    try {
        integrate_adaptive(noisy, 0.0, 10.0, {}, opts);
        FAIL("expected the panel budget to run out");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ToleranceUnmet);
    }
    opts.noise_rel = 1e-8;
    const MomentEstimate m = integrate_adaptive(noisy, 0.0, 10.0, {}, opts);
    CHECK(m.value == doctest::Approx(20.0 + std::sin(10.0)).epsilon(1e-8));
    opts.noise_rel = -1.0;
    CHECK_THROWS_AS(integrate_adaptive(noisy, 0.0, 10.0, {}, opts), Error);
}

TEST_CASE("result does not depend on the thread count") {
    auto f = [](double x) { return std::exp(std::sin(3 * x)) * std::cos(17 * x); };
    std::vector<double> cuts;
    for (int i = 1; i < 200; ++i) cuts.push_back(i * 0.05);
    QuadOptions one;
    one.abs_tol_per_length = 1e-12;
    QuadOptions many = one;
    many.threads = 6;
    const MomentEstimate a = integrate_adaptive(f, 0.0, 10.0, cuts, one);
    const MomentEstimate b = integrate_adaptive(f, 0.0, 10.0, cuts, many);
    CHECK(a.value == b.value);
    CHECK(a.panels == b.panels);
    CHECK(a.evals >= a.panels);
}

}
