// hardyz command-line driver.
//
// Every subcommand writes its result (JSON or CSV) to --out or stdout and a
// run manifest to <out>.manifest.json (stderr when writing to stdout).
// Exit codes: 0 ok, 1 error, 2 finished with warnings.
#include <chrono>
#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hardyz/arith.hpp"
#include "hardyz/hardy.hpp"
#include "hardyz/moments.hpp"
#include "hardyz/parallel.hpp"
#include "hardyz/serialize.hpp"
#include "hardyz/zeros.hpp"
#include "hardyz/zeta_core.hpp"

namespace {

using nlohmann::json;
using namespace hardyz;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitWarning = 2;

struct Globals {
    double tol = 1e-9;
    int rs_corrections = 2;
    unsigned threads = 0;
    std::string format = "json";
    std::string out;
    std::string cache_dir;
};

struct Result {
    json data;
    std::string csv;
    json parameters;
    bool warning = false;
};

EvalConfig make_config(const Globals& g) {
    EvalConfig cfg;
    cfg.rs_correction_terms = g.rs_corrections;
    cfg.t_min = kLowestTMin;
    return cfg;
}

MomentConfig make_moment_config(const Globals& g) {
    MomentConfig mc;
    mc.eval = make_config(g);
    mc.tol = g.tol;
    mc.threads = resolve_threads(g.threads);
    return mc;
}

std::optional<std::filesystem::path> cache_dir(const Globals& g) {
    if (g.cache_dir.empty()) return std::nullopt;
    return std::filesystem::path(g.cache_dir);
}

int emit(const Globals& g, const std::string& command, const Result& r, const EvalConfig& cfg,
         std::chrono::steady_clock::time_point start) {
    RunManifest m;
    m.command = command;
    m.parameters = r.parameters;
    m.config_hash = config_hash(command, r.parameters, cfg);

    json data = r.data;
    data["command"] = command;
    data["config_hash"] = m.config_hash;
    const std::string body = g.format == "csv" ? r.csv : data.dump(2) + "\n";

    if (g.out.empty()) {
        std::cout << body;
    } else {
        write_text(g.out, body);
        m.outputs.push_back(g.out);
    }
    m.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string manifest = to_json(m).dump(2) + "\n";
    if (g.out.empty()) {
        std::cerr << manifest;
    } else {
        write_text(g.out + ".manifest.json", manifest);
    }
    return r.warning ? kExitWarning : kExitOk;
}

// Locates zeros; on a count mismatch rescans at a quarter step and warns if
// the mismatch persists.
ZeroSet scan_zeros(const Window& w, const EvalConfig& cfg, unsigned threads, bool& warning) {
    LocateOptions lo;
    lo.threads = threads;
    lo.check_count = false;
    ZeroSet zs = locate_zeros(w, cfg, lo);
    if (std::fabs(zero_count_discrepancy(zs)) > zero_count_slack(w)) {
        std::cerr << "warning: zero count off the main terms by " << zero_count_discrepancy(zs)
                  << "; rescanning at quarter step\n";
        lo.step_scale = 0.25;
        zs = locate_zeros(w, cfg, lo);
        if (std::fabs(zero_count_discrepancy(zs)) > zero_count_slack(w)) {
            std::cerr << "warning: zero count still off by " << zero_count_discrepancy(zs) << "\n";
            warning = true;
        }
    }
    return zs;
}

Result run_zeros(const Globals& g, double t, double width, bool with_stationary) {
    const EvalConfig cfg = make_config(g);
    const Window w{t, width};
    Result r;
    r.parameters = {{"t", t}, {"width", width}, {"stationary", with_stationary}};
    ZeroSet zs = scan_zeros(w, cfg, resolve_threads(g.threads), r.warning);
    if (with_stationary) zs = stationary_points(zs, cfg, resolve_threads(g.threads));
    r.data = zeroset_to_json(zs);
    r.data["count_discrepancy"] = zero_count_discrepancy(zs);
    r.data["count_slack"] = zero_count_slack(w);
    r.csv = zeroset_to_csv(zs);
    return r;
}

Result run_moments(const Globals& g, const std::string& which, int k, double t, double width) {
    const MomentConfig mc = make_moment_config(g);
    const Window w{t, width};
    Result r;
    r.parameters = {{"which", which}, {"k", k}, {"t", t}, {"width", width}, {"tol", g.tol}};
    const WindowLayout layout = window_layout(scan_zeros(w, mc.eval, mc.threads, r.warning), mc.eval, mc.threads);
    MomentEstimate est;
    double log_power = 0.0;
    if (which == "zeta") {
        est = moment_zeta(layout, k, mc);
        log_power = k * k;
    } else if (which == "zeta_deriv") {
        est = moment_zeta_deriv(layout, k, mc);
        log_power = k * k + 2 * k;
    } else if (which == "zprime_zk") {
        est = moment_zprime_zk(layout, k, mc);
        log_power = k * k + 2;
    } else {
        est = abs_moment_zprime_z(layout, k, mc);
        log_power = k * k;
    }
    const double normalized = est.value / (width * std::pow(std::log(t), log_power));
    r.data = {{"operation", which},
              {"window", to_json(w)},
              {"k", k},
              {"value", est.value},
              {"abs_error_estimate", est.abs_error_estimate},
              {"panels", est.panels},
              {"evals", est.evals},
              {"normalized", normalized},
              {"log_power", log_power}};
    std::ostringstream csv;
    csv << "operation,t_start,width,k,value,abs_error_estimate,panels,evals,normalized\n"
        << which << ',' << format_double(t) << ',' << format_double(width) << ',' << k << ','
        << format_double(est.value) << ',' << format_double(est.abs_error_estimate) << ',' << est.panels << ','
        << est.evals << ',' << format_double(normalized) << '\n';
    r.csv = csv.str();
    return r;
}

Result run_extrema(const Globals& g, int k, double t, double width) {
    const EvalConfig cfg = make_config(g);
    const Window w{t, width};
    Result r;
    r.parameters = {{"k", k}, {"t", t}, {"width", width}};
    const unsigned threads = resolve_threads(g.threads);
    const ZeroSet zs = stationary_points(scan_zeros(w, cfg, threads, r.warning), cfg, threads);
    const ExtremaSum es = extrema_sum(zs, k);
    const double target = std::exp(2.0) - 5.0;
    const double ratio = conrey_ghosh_ratio(es);
    r.data = {{"window", to_json(w)},     {"k", k},
              {"sum", es.sum},            {"zero_count", es.zero_count},
              {"normalized", es.normalized}, {"conrey_ghosh_ratio", ratio}};
    if (k == 1) r.data["conrey_ghosh_target"] = target;
    std::ostringstream csv;
    csv << "t_start,width,k,sum,zero_count,normalized,conrey_ghosh_ratio\n"
        << format_double(t) << ',' << format_double(width) << ',' << k << ',' << format_double(es.sum) << ','
        << es.zero_count << ',' << format_double(es.normalized) << ',' << format_double(ratio) << '\n';
    r.csv = csv.str();
    return r;
}

Result run_constants(const Globals& g, int k, double prime_limit, double xi) {
    Result r;
    r.parameters = {{"k", k}, {"prime_limit", prime_limit}, {"xi", xi}};
    const auto limit = static_cast<std::uint64_t>(prime_limit);
    const EulerProductResult c = ramachandra_constant(k, limit);
    const auto n_max = static_cast<std::uint64_t>(std::floor(xi));
    const DivisorTable table = cached_divisor_table(k, n_max, cache_dir(g));
    const double dss = divisor_square_sum(table, xi);
    const double ratio = dss / std::pow(std::log(xi), k * k);
    r.data = {{"k", k},
              {"prime_limit", limit},
              {"ramachandra_constant", c.value},
              {"truncation_estimate", c.truncation_estimate},
              {"xi", xi},
              {"divisor_square_sum", dss},
              {"divisor_square_sum_over_log_power", ratio}};
    std::ostringstream csv;
    csv << "k,prime_limit,ramachandra_constant,truncation_estimate,xi,divisor_square_sum\n"
        << k << ',' << limit << ',' << format_double(c.value) << ',' << format_double(c.truncation_estimate) << ','
        << format_double(xi) << ',' << format_double(dss) << '\n';
    r.csv = csv.str();
    return r;
}

Result run_dirichlet(const Globals& g, int k, double t, double width, double xi, double theta) {
    if (theta > 0.0) xi = std::pow(t, theta);
    Result r;
    r.parameters = {{"k", k}, {"t", t}, {"width", width}, {"xi", xi}, {"theta", theta}, {"tol", g.tol}};
    if (!(xi >= 1.0)) throw Error(ErrorCode::InvalidArgument, "dirichlet: give --xi >= 1 or --theta > 0");
    const auto n_max = static_cast<std::uint64_t>(std::floor(xi));
    const DivisorTable table = cached_divisor_table(k, n_max, cache_dir(g));
    const MeanSquareResult ms = mean_square_A({t, width}, k, xi, table, g.tol, resolve_threads(g.threads));
    const double rel = ms.deviation / ms.diagonal;
    r.data = {{"window", to_json(Window{t, width})},
              {"k", k},
              {"xi", xi},
              {"integral", to_json(ms.integral)},
              {"diagonal", ms.diagonal},
              {"deviation", ms.deviation},
              {"relative_deviation", rel},
              {"constant", ms.constant}};
    std::ostringstream csv;
    csv << "t_start,width,k,xi,integral,diagonal,relative_deviation,constant\n"
        << format_double(t) << ',' << format_double(width) << ',' << k << ',' << format_double(xi) << ','
        << format_double(ms.integral.value) << ',' << format_double(ms.diagonal) << ',' << format_double(rel)
        << ',' << format_double(ms.constant) << '\n';
    r.csv = csv.str();
    return r;
}

Result run_measure(const Globals& g, double t, double half_width, double v_min, double v_max, int v_count,
                   double step) {
    const EvalConfig cfg = make_config(g);
    const double root = std::sqrt(std::log(std::log(t)));
    if (std::isnan(v_min)) v_min = root;
    if (std::isnan(v_max)) v_max = 2.0 * root;
    if (std::isnan(step)) step = 0.04 / std::log(t);
    if (!(v_max >= v_min)) throw Error(ErrorCode::InvalidArgument, "measure: need v-max >= v-min");
    std::vector<double> grid;
    for (int i = 0; i < v_count; ++i) {
        grid.push_back(v_count == 1 ? v_min : v_min + (v_max - v_min) * i / (v_count - 1));
    }
    Result r;
    r.parameters = {{"t", t},         {"half_width", half_width}, {"v_min", v_min},
                    {"v_max", v_max}, {"v_count", v_count},       {"step", step}};
    const auto est = large_value_measure(t, half_width, grid, step, cfg, resolve_threads(g.threads));
    const DecayFit fit = fit_large_value_decay(est, t, half_width);
    json rows = json::array();
    std::ostringstream csv;
    csv << "v,mu,mu_over_h,sample_step\n";
    for (const auto& e : est) {
        rows.push_back(json{{"v", e.v}, {"mu", e.mu}, {"mu_over_h", e.mu / half_width}});
        csv << format_double(e.v) << ',' << format_double(e.mu) << ',' << format_double(e.mu / half_width) << ','
            << format_double(e.sample_step) << '\n';
    }
    r.data = {{"center", t},
              {"half_width", half_width},
              {"sample_step", est.empty() ? step : est.front().sample_step},
              {"measures", rows},
              {"decay_fit", json{{"slope", fit.slope}, {"log_constant", fit.intercept}, {"points", fit.points}}}};
    r.csv = csv.str();
    return r;
}

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

Result run_selftest(const Globals& g) {
    const EvalConfig cfg = make_config(g);
    std::vector<Check> checks;
    auto add = [&](const std::string& name, bool pass, double value) {
        checks.push_back({name, pass, format_double(value)});
    };

    const double pi = std::numbers::pi;
    const double zeta2 = zeta_em(2.0, cfg).real();
    add("zeta(2)", std::fabs(zeta2 - pi * pi / 6.0) < 1e-12, zeta2);

    std::mt19937_64 rng(20261018);
    std::uniform_real_distribution<double> sig(0.05, 0.95);
    std::uniform_real_distribution<double> tt(50.0, 1e4);
    double fe = 0.0;
    double refl = 0.0;
    for (int i = 0; i < 20; ++i) {
        const Complex s(sig(rng), tt(rng));
        const Complex z = zeta_em(s, cfg);
        fe = std::max(fe, std::abs(z - chi(s) * zeta_em(1.0 - s, cfg)) / std::abs(z));
        refl = std::max(refl, std::abs(chi(s) * chi(1.0 - s) - 1.0));
    }
    add("functional_equation", fe <= 1e-8, fe);
    add("chi_reflection", refl <= 1e-10, refl);

    const double rs_gap = std::fabs(hardy_z_rs(1e4, cfg).z - hardy_z_em(1e4, cfg).z);
    add("rs_vs_em_1e4", rs_gap <= 1e-6, rs_gap);

    LocateOptions lo;
    lo.threads = resolve_threads(g.threads);
    const ZeroSet zs = locate_zeros({100.0, 900.0}, cfg, lo);
    const double disc = zero_count_discrepancy(zs);
    add("zero_count_100_1000", std::fabs(disc) <= zero_count_slack(zs.window), disc);
    const ZeroSet filled = stationary_points(zs, cfg, lo.threads);
    add("interlacing_100_1000", filled.stationary_points_filled(), static_cast<double>(filled.count()));

    MomentConfig mc;
    mc.eval = cfg;
    mc.tol = std::min(g.tol, 1e-9);
    double worst = 0.0;
    for (std::size_t i = 0; i < 5 && i < filled.count(); ++i) {
        for (int k = 1; k <= 3; ++k) worst = std::max(worst, gap_identity_check(filled.records[i], k, mc).rel_residual);
    }
    add("gap_identity", worst <= 1e-5, worst);

    const double c1 = ramachandra_constant(1, 1000).value;
    add("ramachandra_k1", std::fabs(c1 - 0.5) <= 1e-12, c1);
    const double c2 = ramachandra_constant(2, 100000).value;
    add("ramachandra_k2", std::fabs(c2 * 8.0 * pi * pi - 1.0) <= 1e-5, c2);

    Result r;
    r.parameters = json::object();
    json rows = json::array();
    std::ostringstream csv;
    csv << "check,pass,value\n";
    bool all = true;
    for (const auto& c : checks) {
        all = all && c.pass;
        rows.push_back(json{{"check", c.name}, {"pass", c.pass}, {"value", c.detail}});
        csv << c.name << ',' << (c.pass ? "PASS" : "FAIL") << ',' << c.detail << '\n';
        std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << " " << c.detail << "\n";
    }
    r.data = {{"checks", rows}, {"all_pass", all}};
    r.csv = csv.str();
    if (!all) throw Error(ErrorCode::PrecisionUnattainable, "selftest failed");
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hardyz: Hardy Z function, zeros, moments and divisor sums"};
    app.fallthrough();
    app.require_subcommand(1);
    Globals g;
    app.add_option("--tol", g.tol, "relative quadrature tolerance")->check(CLI::Range(1e-15, 1e-2));
    app.add_option("--rs-corrections", g.rs_corrections, "Riemann-Siegel correction depth")->check(CLI::Range(0, 2));
    app.add_option("--threads", g.threads, "worker threads, 0 = all cores");
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", g.out, "output file (default stdout)");
    app.add_option("--cache-dir", g.cache_dir, "directory for cached divisor tables");

    double t = 0.0;
    double width = 0.0;
    int k = 1;

    auto* zeros = app.add_subcommand("zeros", "locate zeros and stationary points in [t, t+width]");
    bool no_stationary = false;
    zeros->add_option("--t", t, "window start")->required();
    zeros->add_option("--width", width, "window width")->required()->check(CLI::PositiveNumber);
    zeros->add_flag("--no-stationary", no_stationary, "skip the stationary points");

    auto* moments = app.add_subcommand("moments", "moment integrals over [t, t+width]");
    std::string which = "zeta";
    moments->add_option("--which", which)->check(CLI::IsMember({"zeta", "zeta_deriv", "zprime_zk", "abs_zprime_z"}));
    moments->add_option("--k", k)->check(CLI::Range(1, 4));
    moments->add_option("--t", t)->required();
    moments->add_option("--width", width)->required()->check(CLI::PositiveNumber);

    auto* extrema = app.add_subcommand("extrema", "sum of Z(lambda)^(2k) over the zeros in the window");
    extrema->add_option("--k", k)->check(CLI::Range(1, 4));
    extrema->add_option("--t", t)->required();
    extrema->add_option("--width", width)->required()->check(CLI::PositiveNumber);

    auto* constants = app.add_subcommand("constants", "Euler-product constant and divisor square sums");
    double prime_limit = 1e5;
    double xi_const = 1e3;
    constants->add_option("--k", k)->check(CLI::Range(1, 5));
    constants->add_option("--prime-limit", prime_limit)->check(CLI::Range(2.0, 1e7));
    constants->add_option("--xi", xi_const)->check(CLI::Range(1.0, 1e7));

    auto* dirichlet = app.add_subcommand("dirichlet", "mean square of the Dirichlet polynomial A(t)");
    double xi = 0.0;
    double theta = 0.0;
    dirichlet->add_option("--k", k)->check(CLI::Range(1, 6));
    dirichlet->add_option("--t", t)->required();
    dirichlet->add_option("--width", width)->required()->check(CLI::PositiveNumber);
    auto* xi_opt = dirichlet->add_option("--xi", xi)->check(CLI::Range(1.0, 1e7));
    dirichlet->add_option("--theta", theta, "use xi = t^theta")->check(CLI::Range(1e-6, 1.0))->excludes(xi_opt);

    auto* measure = app.add_subcommand("measure", "measure of large values of log|zeta| on [t-h, t+h]");
    double half_width = 0.0;
    double v_min = std::nan("");
    double v_max = std::nan("");
    int v_count = 12;
    double step = std::nan("");
    measure->add_option("--t", t)->required();
    measure->add_option("--half-width", half_width)->required()->check(CLI::PositiveNumber);
    measure->add_option("--v-min", v_min);
    measure->add_option("--v-max", v_max);
    measure->add_option("--v-count", v_count)->check(CLI::Range(1, 10000));
    measure->add_option("--step", step)->check(CLI::PositiveNumber);

    auto* selftest = app.add_subcommand("selftest", "run the quick invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        const EvalConfig cfg = make_config(g);
        if (zeros->parsed()) return emit(g, "zeros", run_zeros(g, t, width, !no_stationary), cfg, start);
        if (moments->parsed()) {
            if (which == "zprime_zk" && k < 2) {
                throw Error(ErrorCode::InvalidArgument, "moments --which zprime_zk needs k >= 2");
            }
            if (which == "zeta_deriv" && k > 3) {
                throw Error(ErrorCode::InvalidArgument, "moments --which zeta_deriv needs k <= 3");
            }
            return emit(g, "moments", run_moments(g, which, k, t, width), cfg, start);
        }
        if (extrema->parsed()) return emit(g, "extrema", run_extrema(g, k, t, width), cfg, start);
        if (constants->parsed()) return emit(g, "constants", run_constants(g, k, prime_limit, xi_const), cfg, start);
        if (dirichlet->parsed()) return emit(g, "dirichlet", run_dirichlet(g, k, t, width, xi, theta), cfg, start);
        if (measure->parsed()) {
            return emit(g, "measure", run_measure(g, t, half_width, v_min, v_max, v_count, step), cfg, start);
        }
        if (selftest->parsed()) return emit(g, "selftest", run_selftest(g), cfg, start);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
