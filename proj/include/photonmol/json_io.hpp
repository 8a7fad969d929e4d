#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "photonmol/optimal.hpp"
#include "photonmol/params.hpp"
#include "photonmol/sweep.hpp"

namespace photonmol {

// Flat objects keyed by the SystemParams field names. Missing fields keep their
// defaults; unknown keys are rejected.
void to_json(nlohmann::json& j, const SystemParams& p);
void from_json(const nlohmann::json& j, SystemParams& p);

// {"parameter", "min", "max", "count", "scale": "linear"|"log"} or
// {"parameter", "values": [...]}.
void to_json(nlohmann::json& j, const Axis& axis);
void from_json(const nlohmann::json& j, Axis& axis);

// {"base", "axis1", "axis2", "solver", "constraints": [...], "n_max" | "n_max_a"/"n_max_b"}
void to_json(nlohmann::json& j, const SweepConfig& config);
void from_json(const nlohmann::json& j, SweepConfig& config);

void to_json(nlohmann::json& j, const OptimalPoint& point);
void to_json(nlohmann::json& j, const ResultRow& row);

/// Parse a JSON file, wrapping I/O and syntax failures in ConfigError.
nlohmann::json read_json_file(const std::filesystem::path& path);

SweepConfig load_sweep_config(const std::filesystem::path& path);
SystemParams load_params(const std::filesystem::path& path);

/// Version string compiled into the library.
std::string code_version();

/// Sidecar written next to every dataset: config, code version, UTC timestamp.
nlohmann::json dataset_metadata(const nlohmann::json& config, std::size_t rows);

}  // namespace photonmol
