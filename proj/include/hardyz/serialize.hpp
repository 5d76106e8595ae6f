// CSV and JSON encodings of zero sets and moment results, run manifests and
// the configuration hash.
//
// ZeroSet CSV (schema hardyz.zeroset v1):
//   # hardyz.zeroset v1 t_start=<T> width=<H> count=<n>
//   gamma,gamma_plus,lambda,z_at_lambda
//   one row per record; lambda is empty when not computed.
// ZeroSet JSON:
//   {"schema": "hardyz.zeroset", "version": 1,
//    "window": {"t_start": T, "width": H}, "count": n,
//    "records": [{"gamma", "gamma_plus", "lambda" (or null), "z_at_lambda", "degenerate"}]}
// Doubles are written in shortest round-trip form.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardyz/moment_estimate.hpp"
#include "hardyz/types.hpp"
#include "hardyz/zeros.hpp"

namespace hardyz {

inline constexpr int kZeroSetSchemaVersion = 1;
inline constexpr const char* kArtifactVersion = "0.1.0";

std::string format_double(double x);

std::string zeroset_to_csv(const ZeroSet& zs);
nlohmann::json zeroset_to_json(const ZeroSet& zs);
ZeroSet zeroset_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EvalConfig& cfg);
nlohmann::json to_json(const Window& w);
nlohmann::json to_json(const MomentEstimate& m);

// 16 hex digits of FNV-1a 64 over the canonical dump of
// {"command", "parameters", "config"}.
std::string config_hash(const std::string& command, const nlohmann::json& parameters, const EvalConfig& cfg);

struct RunManifest {
    std::string command;
    nlohmann::json parameters = nlohmann::json::object();
    std::string config_hash;
    std::string artifact_version = kArtifactVersion;
    double wall_time_s = 0.0;
    std::vector<std::string> outputs;
};

nlohmann::json to_json(const RunManifest& m);

// Writes text to path; throws Error(Io) on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace hardyz
