#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "aoi/analysis.hpp"
#include "aoi/bnb.hpp"
#include "aoi/model.hpp"
#include "aoi/sim.hpp"

namespace aoi {

struct ParsedConfig {
    SystemConfig system;
    std::optional<PreemptionPolicy> policy;
    SimConfig sim;  // defaults unless a "sim" block is present
    bool has_sim = false;
};

/// Strict parse: unknown keys, wrong types, and inconsistent dimensions
/// are all rejected with ConfigParseError.
ParsedConfig parse_config_json(const std::string& text);
ParsedConfig parse_config(const nlohmann::json& doc);
ParsedConfig parse_config_file(const std::string& path);

nlohmann::json config_to_json(const SystemConfig& config, const std::optional<PreemptionPolicy>& policy);

nlohmann::json analysis_to_json(const SystemConfig& config, const PreemptionPolicy& policy,
                                const AoiReport& report);

nlohmann::json sim_result_to_json(const SimResult& result, const SimConfig& sim);
std::string sim_result_to_csv(const SimResult& result);

nlohmann::json bnb_result_to_json(const BnbResult& result, long long theorem2_bound);

/// Shortest representation that parses back to the same double.
std::string format_double(double value);

} // namespace aoi
