#include "hardyz/serialize.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hardyz {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const double mag = std::fabs(x);
    const auto fmt = mag == 0.0 || (mag >= 1e-4 && mag < 1e15) ? std::chars_format::fixed : std::chars_format::scientific;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, fmt);
    return std::string(buf.data(), res.ptr);
}

std::string zeroset_to_csv(const ZeroSet& zs) {
    std::ostringstream os;
    os << "# hardyz.zeroset v" << kZeroSetSchemaVersion << " t_start=" << format_double(zs.window.t_start)
       << " width=" << format_double(zs.window.width) << " count=" << zs.count() << '\n';
    os << "gamma,gamma_plus,lambda,z_at_lambda\n";
    for (const auto& r : zs.records) {
        os << format_double(r.gamma) << ',' << format_double(r.gamma_plus) << ',';
        if (r.has_stationary_point()) os << format_double(r.lambda);
        os << ',' << format_double(r.z_at_lambda) << '\n';
    }
    return os.str();
}

nlohmann::json to_json(const Window& w) { return {{"t_start", w.t_start}, {"width", w.width}}; }

nlohmann::json zeroset_to_json(const ZeroSet& zs) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& r : zs.records) {
        nlohmann::json rec;
        rec["gamma"] = r.gamma;
        rec["gamma_plus"] = r.gamma_plus;
        rec["lambda"] = r.has_stationary_point() ? nlohmann::json(r.lambda) : nlohmann::json(nullptr);
        rec["z_at_lambda"] = r.z_at_lambda;
        rec["degenerate"] = r.degenerate;
        records.push_back(std::move(rec));
    }
    return {{"schema", "hardyz.zeroset"},
            {"version", kZeroSetSchemaVersion},
            {"window", to_json(zs.window)},
            {"count", zs.count()},
            {"records", std::move(records)}};
}

ZeroSet zeroset_from_json(const nlohmann::json& j) {
    try {
        if (j.at("schema") != "hardyz.zeroset" || j.at("version").get<int>() != kZeroSetSchemaVersion) {
            throw Error(ErrorCode::Io, "unsupported zero set schema");
        }
        ZeroSet zs;
        zs.window.t_start = j.at("window").at("t_start").get<double>();
        zs.window.width = j.at("window").at("width").get<double>();
        for (const auto& rec : j.at("records")) {
            ZeroRecord r;
            r.gamma = rec.at("gamma").get<double>();
            r.gamma_plus = rec.at("gamma_plus").get<double>();
            if (!rec.at("lambda").is_null()) r.lambda = rec.at("lambda").get<double>();
            r.z_at_lambda = rec.at("z_at_lambda").get<double>();
            r.degenerate = rec.at("degenerate").get<bool>();
            zs.records.push_back(r);
        }
        if (zs.count() != j.at("count").get<std::size_t>()) throw Error(ErrorCode::Io, "zero set count mismatch");
        return zs;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Io, std::string("malformed zero set JSON: ") + e.what());
    }
}

nlohmann::json to_json(const EvalConfig& cfg) {
    return {{"target_rel_error", cfg.target_rel_error}, {"em_max_terms", cfg.em_max_terms},
            {"rs_correction_terms", cfg.rs_correction_terms}, {"t_min", cfg.t_min},
            {"t_max", cfg.t_max}, {"prefer_oracle", cfg.prefer_oracle}};
}

nlohmann::json to_json(const MomentEstimate& m) {
    return {{"value", m.value}, {"abs_error_estimate", m.abs_error_estimate}, {"panels", m.panels},
            {"evals", m.evals}};
}

std::string config_hash(const std::string& command, const nlohmann::json& parameters, const EvalConfig& cfg) {
    const nlohmann::json canon = {{"command", command}, {"parameters", parameters}, {"config", to_json(cfg)}};
    std::uint64_t h = 14695981039346656037ull;
    for (const unsigned char c : canon.dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::array<char, 17> buf{};
    std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(h));
    return buf.data();
}

nlohmann::json to_json(const RunManifest& m) {
    return {{"command", m.command},         {"parameters", m.parameters},
            {"config_hash", m.config_hash}, {"artifact_version", m.artifact_version},
            {"wall_time_s", m.wall_time_s}, {"outputs", m.outputs}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    os << text;
    if (!os) throw Error(ErrorCode::Io, "short write to " + path.string());
}

}  // namespace hardyz
