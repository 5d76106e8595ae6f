// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hardyz/arith.hpp"
#include "hardyz/hardy.hpp"
#include "hardyz/moments.hpp"
#include "hardyz/parallel.hpp"
#include "hardyz/zeros.hpp"
#include "hardyz/zeta_core.hpp"
#include "oracles.hpp"

using namespace hardyz;

namespace {

const double kPi = std::numbers::pi;
const double kE2m5 = std::exp(2.0) - 5.0;
const unsigned kThreads = resolve_threads(0);

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

MomentConfig moment_cfg() {
    MomentConfig mc;
    mc.threads = kThreads;
    return mc;
}

Outcome gap_identity() {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> lt(std::log(1e4), std::log(1e6));
    const MomentConfig mc = moment_cfg();
    double worst = 0.0;
    int checks = 0;
    for (int i = 0; i < 200; ++i) {
        const double t = std::exp(lt(rng));
        const ZeroSet zs = locate_zeros({t, 2.0}, mc.eval);
        const ZeroSet one{zs.window, {zs.records.front()}};
        const ZeroRecord r = stationary_points(one, mc.eval).records.front();
        for (int k = 1; k <= 3; ++k) {
            worst = std::max(worst, gap_identity_check(r, k, mc).rel_residual);
            ++checks;
        }
    }
    return {worst <= 1e-5, fmt("max rel residual %.2e over %.0f gap/k pairs", worst, checks)};
}

Outcome derivative_identity() {
    EvalConfig cfg;
    cfg.prefer_oracle = true;
    cfg.target_rel_error = 1e-12;
    std::mt19937_64 rng(102);
    std::uniform_real_distribution<double> lt(std::log(1e3), std::log(1e6));
    std::vector<double> ts;
    while (ts.size() < 500) {
        const double t = std::exp(lt(rng));
        if (std::abs(z1({0.5, t}, cfg).value) >= 1e-3) ts.push_back(t);
    }
    std::vector<double> rel(ts.size());
    parallel_for(ts.size(), kThreads, [&](std::size_t i) {
        const double mag = std::abs(z1({0.5, ts[i]}, cfg).value);
        const double fd = oracle::diff6([&cfg](double x) { return hardy_z(x, cfg).z; }, ts[i], 1e-2);
        rel[i] = std::fabs(mag - std::fabs(fd)) / mag;
    });
    const double worst = *std::max_element(rel.begin(), rel.end());
    return {worst <= 1e-4, fmt("max relative gap %.2e at 500 points in [1e3, 1e6]", worst)};
}

Outcome oracle_equivalence() {
    EvalConfig cfg;
    cfg.rs_correction_terms = 2;
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> tt(1e3, 1e7);
    std::vector<double> ts(1000);
    for (auto& t : ts) t = tt(rng);
    std::vector<double> gap(ts.size());
    parallel_for(ts.size(), kThreads, [&](std::size_t i) {
        gap[i] = std::fabs(hardy_z_rs(ts[i], cfg).z - hardy_z_em(ts[i], cfg).z);
    });
    const double worst = *std::max_element(gap.begin(), gap.end());
    return {worst <= 1e-6, fmt("max |Z_RS - Z_EM| = %.2e at 1000 points in [1e3, 1e7]", worst)};
}

Outcome functional_equation() {
    const EvalConfig cfg;
    std::mt19937_64 rng(104);
    std::uniform_real_distribution<double> sig(0.01, 0.99);
    std::uniform_real_distribution<double> tt(50.0, 1e4);
    double fe = 0.0;
    double refl = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Complex s(sig(rng), tt(rng));
        const Complex z = zeta_em(s, cfg);
        fe = std::max(fe, std::abs(z - chi(s) * zeta_em(1.0 - s, cfg)) / std::abs(z));
        refl = std::max(refl, std::abs(chi(s) * chi(1.0 - s) - 1.0));
    }
    std::uniform_real_distribution<double> rt(1e3, 1e6);
    std::vector<double> ts(1000);
    for (auto& t : ts) t = rt(rng);
    std::vector<double> real(ts.size());
    parallel_for(ts.size(), kThreads, [&](std::size_t i) {
        const HardyValue v = hardy_z_em(ts[i], cfg);
        real[i] = v.imag_residual / (1.0 + std::fabs(v.z));
    });
    const double re = *std::max_element(real.begin(), real.end());
    return {fe <= 1e-8 && refl <= 1e-10 && re <= 1e-8,
            fmt("functional equation %.2e, chi reflection %.2e, realness %.2e", fe, refl, re)};
}

Outcome zero_counts() {
    const EvalConfig cfg;
    LocateOptions lo;
    lo.threads = kThreads;
    lo.check_count = false;
    std::string detail;
    bool ok = true;
    const Window windows[] = {{1e2, 9e2}, {1e3, 9e3}, {1e4, 1e4}};
    for (const Window& w : windows) {
        const ZeroSet zs = locate_zeros(w, cfg, lo);
        const double disc = zero_count_discrepancy(zs);
        const double slack = zero_count_slack(w);
        const ZeroSet filled = stationary_points(zs, cfg, kThreads);
        std::size_t inside = 0;
        for (const auto& r : filled.records) inside += r.lambda > r.gamma && r.lambda < r.gamma_plus;
        ok = ok && std::fabs(disc) <= slack && inside == filled.count();
        detail += fmt("[%.0f,%.0f]: %.0f zeros, off by %.2f; ", w.t_start, w.t_end(), zs.count(), disc);
    }
    return {ok, detail + "no interlacing violations"};
}

// Zeros up to 1e4, shared by the M_k checks.
const ZeroSet& zeros_to_1e4() {
    static const ZeroSet zs = [] {
        EvalConfig cfg;
        cfg.t_min = kLowestTMin;
        LocateOptions lo;
        lo.threads = kThreads;
        return stationary_points(locate_zeros({kLowestTMin, 1e4 - kLowestTMin}, cfg, lo), cfg, kThreads);
    }();
    return zs;
}

Outcome conrey_ghosh() {
    const EvalConfig cfg;
    LocateOptions lo;
    lo.threads = kThreads;
    const ZeroSet zs = stationary_points(locate_zeros({1e6, 1e4}, cfg, lo), cfg, kThreads);
    const double ratio = conrey_ghosh_ratio(extrema_sum(zs, 1));
    const MkResult m1 = mk_from_zeros(zeros_to_1e4(), 1);
    const bool ok = std::fabs(ratio / kE2m5 - 1.0) <= 0.3 && std::fabs(m1.normalized - kE2m5 / 2) <= 0.35;
    return {ok, fmt("extrema ratio %.4f vs %.4f; M1/log T = %.4f vs %.4f", ratio, kE2m5, m1.normalized, kE2m5 / 2)};
}

Outcome conrey_bracket() {
    const MkResult m2 = mk_from_zeros(zeros_to_1e4(), 2);
    const double lo = 0.5 * std::sqrt(21.0) / (45 * kPi);
    const double hi = 2.0 / (kPi * std::sqrt(15.0));
    return {m2.normalized >= lo && m2.normalized <= hi,
            fmt("M2/log^4 T = %.5f in [%.5f, %.5f]", m2.normalized, lo, hi)};
}

Outcome ramachandra() {
    const double c1 = ramachandra_constant(1, 1000).value;
    const double c2 = ramachandra_constant(2, 100000).value;
    const double closed = 1.0 / (8 * kPi * kPi);
    const double rel = std::fabs(c2 / closed - 1.0);
    return {std::fabs(c1 - 0.5) <= 1e-12 && rel <= 1e-5, fmt("C1' - 1/2 = %.2e, C2' rel error %.2e", c1 - 0.5, rel)};
}

Outcome dirichlet_mean_value() {
    const DivisorTable d2 = divisor_table(2, 100);
    const MeanSquareResult r = mean_square_A({1e6, 1e4}, 2, 100.0, d2, 1e-9, kThreads);
    const double rel = r.deviation / r.diagonal;
    return {rel <= 0.05, fmt("integral %.6e vs diagonal %.6e, rel %.2e", r.integral.value, r.diagonal, rel)};
}

Outcome telescoping() {
    const MomentConfig mc = moment_cfg();
    LocateOptions lo;
    lo.threads = kThreads;
    const ZeroSet zs = stationary_points(locate_zeros({1e5, 80.0}, mc.eval, lo), mc.eval, kThreads);
    if (zs.count() < 100) return {false, "fewer than 100 gaps located"};
    const std::span<const ZeroRecord> gaps(zs.records.data(), 100);
    double worst = 0.0;
    for (int k = 1; k <= 3; ++k) worst = std::max(worst, telescoping_check(gaps, k, mc).rel_residual);
    return {worst <= 1e-4, fmt("max rel residual %.2e over 100 gaps, k = 1..3", worst)};
}

Outcome growth_probes() {
    const MomentConfig mc = moment_cfg();
    const int k = 2;
    const double h = 1e3;
    double zprime[2];
    double zeta[2];
    double extrema[2];
    const double ts[2] = {1e5, 1e6};
    for (int i = 0; i < 2; ++i) {
        const double l = std::log(ts[i]);
        const WindowLayout layout = window_layout(Window{ts[i], h}, mc.eval, mc.threads);
        zprime[i] = moment_zprime_zk(layout, k, mc).value / (h * std::pow(l, k * k + 2));
        zeta[i] = moment_zeta(layout, k, mc).value / (h * std::pow(l, k * k));
        extrema[i] = extrema_sum(layout.zeros, k).normalized;
    }
    auto spread = [](const double* v) { return std::max(v[0], v[1]) / std::min(v[0], v[1]); };
    const bool ok = spread(zprime) < 3 && spread(zeta) < 3 && spread(extrema) < 3;
    return {ok, fmt("ratios 1e6/1e5: Z'^2 Z^2 %.3f, |Z|^4 %.3f, extrema %.3f", zprime[1] / zprime[0],
                    zeta[1] / zeta[0], extrema[1] / extrema[0])};
}

Outcome holder() {
    const MomentConfig mc = moment_cfg();
    std::mt19937_64 rng(112);
    std::uniform_real_distribution<double> lt(std::log(1e3), std::log(1e6));
    int held = 0;
    double tightest = 0.0;
    for (int i = 0; i < 20; ++i) {
        const WindowLayout layout = window_layout(Window{std::exp(lt(rng)), 25.0}, mc.eval, mc.threads);
        for (int k = 1; k <= 2; ++k) {
            const HolderCheck h = holder_check(layout, k, mc);
            held += h.holds;
            tightest = std::max(tightest, h.lhs / h.rhs);
        }
    }
    return {held == 40, fmt("%.0f of 40 window/k pairs hold, largest lhs/rhs %.4f", held, tightest)};
}

Outcome theorem_a() {
    const EvalConfig cfg;
    const double t = 1e5;
    const double h = 1e3;
    const double root = std::sqrt(std::log(std::log(t)));
    std::vector<double> grid = {-std::numeric_limits<double>::infinity(), -3.0, -1.0, 0.0};
    const std::size_t first_fit = grid.size();
    for (int i = 0; i < 12; ++i) grid.push_back(root * (1.0 + i / 11.0));
    grid.push_back(4.0 * root);
    const auto est = large_value_measure(t, h, grid, 0.04 / std::log(t), cfg, kThreads);
    bool monotone = true;
    for (std::size_t i = 1; i < est.size(); ++i) monotone = monotone && est[i].mu <= est[i - 1].mu;
    const std::vector<MeasureEstimate> fit_part(est.begin() + first_fit, est.begin() + first_fit + 12);
    const DecayFit fit = fit_large_value_decay(fit_part, t, h);
    const bool ok = monotone && fit.slope >= 0.5 && fit.slope <= 1.5 && est.front().mu == 2 * h;
    return {ok, fmt("monotone %.0f, slope %.3f, log constant %.3f, %.0f fit points", monotone, fit.slope,
                    fit.intercept, fit.points)};
}

}  // namespace

int main(int argc, char** argv) {
    // Optional argument: run only the criterion with this number.
    const int only = argc > 1 ? std::atoi(argv[1]) : 0;
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {"gap identity", gap_identity},
        {"derivative identity", derivative_identity},
        {"Riemann-Siegel vs Euler-Maclaurin", oracle_equivalence},
        {"functional equation suite", functional_equation},
        {"zero counts and interlacing", zero_counts},
        {"Conrey-Ghosh constant", conrey_ghosh},
        {"Conrey bracket for M2", conrey_bracket},
        {"Ramachandra constant", ramachandra},
        {"Dirichlet mean value", dirichlet_mean_value},
        {"telescoping", telescoping},
        {"growth probes k = 2", growth_probes},
        {"Holder inequality", holder},
        {"large-value measure shape", theorem_a},
    };
    int failures = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        if (only != 0 && only != index) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.pass;
        std::printf("[%s] %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria passed\n", index - failures, index);
    return failures == 0 ? 0 : 1;
}
