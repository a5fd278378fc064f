#include "aoi/json_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace aoi {

using nlohmann::json;

namespace {

void require_object_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const char* where) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* name : allowed)
            if (key == name) {
                known = true;
                break;
            }
        if (!known)
            throw ConfigParseError(std::string("unknown key \"") + key + "\" in " + where);
    }
}

double number_field(const json& obj, const char* key, const char* where) {
    if (!obj.contains(key))
        throw ConfigParseError(std::string("missing key \"") + key + "\" in " + where);
    const json& value = obj.at(key);
    if (!value.is_number())
        throw ConfigParseError(std::string("key \"") + key + "\" in " + where + " must be a number");
    return value.get<double>();
}

int integer_field(const json& obj, const char* key, const char* where) {
    if (!obj.contains(key))
        throw ConfigParseError(std::string("missing key \"") + key + "\" in " + where);
    const json& value = obj.at(key);
    if (!value.is_number_integer())
        throw ConfigParseError(std::string("key \"") + key + "\" in " + where +
                               " must be an integer");
    return value.get<int>();
}

std::vector<double> number_array(const json& value, const char* what) {
    if (!value.is_array()) throw ConfigParseError(std::string(what) + " must be an array");
    std::vector<double> out;
    out.reserve(value.size());
    for (const json& entry : value) {
        if (!entry.is_number())
            throw ConfigParseError(std::string(what) + " must contain numbers only");
        out.push_back(entry.get<double>());
    }
    return out;
}

} // namespace

ParsedConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigParseError("config document must be a JSON object");
    require_object_keys(doc, {"sensors", "processes", "lambda", "mu", "correlation", "preemption", "sim"},
                        "config");

    ParsedConfig parsed;
    parsed.system.n_sensors = integer_field(doc, "sensors", "config");
    parsed.system.n_processes = integer_field(doc, "processes", "config");
    parsed.system.service_rate = number_field(doc, "mu", "config");
    if (!doc.contains("lambda")) throw ConfigParseError("missing key \"lambda\" in config");
    parsed.system.arrival_rates = number_array(doc.at("lambda"), "\"lambda\"");

    if (!doc.contains("correlation")) throw ConfigParseError("missing key \"correlation\" in config");
    const json& corr = doc.at("correlation");
    if (!corr.is_array()) throw ConfigParseError("\"correlation\" must be an array of rows");
    for (const json& row : corr) {
        const std::vector<double> values = number_array(row, "correlation row");
        if (values.size() != static_cast<std::size_t>(parsed.system.n_processes))
            throw ConfigParseError("correlation row length does not match \"processes\"");
        parsed.system.correlation.insert(parsed.system.correlation.end(), values.begin(),
                                         values.end());
    }
    if (corr.size() != static_cast<std::size_t>(parsed.system.n_sensors))
        throw ConfigParseError("correlation row count does not match \"sensors\"");

    if (doc.contains("preemption"))
        parsed.policy = PreemptionPolicy{number_array(doc.at("preemption"), "\"preemption\"")};

    if (doc.contains("sim")) {
        const json& sim = doc.at("sim");
        if (!sim.is_object()) throw ConfigParseError("\"sim\" must be an object");
        require_object_keys(sim, {"horizon", "warmup", "seed", "replications"}, "sim block");
        parsed.has_sim = true;
        if (sim.contains("horizon")) parsed.sim.horizon = number_field(sim, "horizon", "sim block");
        if (sim.contains("warmup")) parsed.sim.warmup = number_field(sim, "warmup", "sim block");
        if (sim.contains("seed")) {
            const json& seed = sim.at("seed");
            if (!seed.is_number_integer())
                throw ConfigParseError("key \"seed\" in sim block must be an integer");
            parsed.sim.seed = seed.get<std::uint64_t>();
        }
        if (sim.contains("replications"))
            parsed.sim.replications = integer_field(sim, "replications", "sim block");
    }
    return parsed;
}

ParsedConfig parse_config_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigParseError(std::string("invalid JSON: ") + e.what());
    }
    return parse_config(doc);
}

ParsedConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParseError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_json(buffer.str());
}

nlohmann::json config_to_json(const SystemConfig& config,
                              const std::optional<PreemptionPolicy>& policy) {
    json doc;
    doc["sensors"] = config.n_sensors;
    doc["processes"] = config.n_processes;
    doc["lambda"] = config.arrival_rates;
    doc["mu"] = config.service_rate;
    json rows = json::array();
    for (int i = 0; i < config.n_sensors; ++i) {
        json row = json::array();
        for (int j = 0; j < config.n_processes; ++j) row.push_back(config.corr(i, j));
        rows.push_back(std::move(row));
    }
    doc["correlation"] = std::move(rows);
    if (policy) doc["preemption"] = policy->probs;
    return doc;
}

nlohmann::json analysis_to_json(const SystemConfig& config, const PreemptionPolicy& policy,
                                const AoiReport& report) {
    json doc;
    doc["aoi"] = {{"per_process", report.per_process}, {"total", report.total}};
    json pis = json::array();
    for (int j = 0; j < config.n_processes; ++j) {
        const StationaryDistribution pi = stationary_distribution(config, policy, j);
        pis.push_back({pi.pi0, pi.pi1, pi.pi2});
    }
    doc["pi"] = std::move(pis);
    return doc;
}

nlohmann::json sim_result_to_json(const SimResult& result, const SimConfig& sim) {
    json doc;
    doc["aoi_mean"] = result.aoi_mean;
    doc["aoi_ci_halfwidth"] = result.aoi_ci_halfwidth;
    doc["occupancy"] = result.occupancy;
    doc["counts"] = {{"arrivals", result.counts.arrivals},
                     {"preemptions", result.counts.preemptions},
                     {"drops", result.counts.drops},
                     {"completions", result.counts.completions},
                     {"in_service_at_end", result.counts.in_service_at_end}};
    doc["horizon"] = sim.horizon;
    doc["warmup"] = sim.effective_warmup();
    doc["seed"] = sim.seed;
    doc["replications"] = sim.replications;
    return doc;
}

std::string sim_result_to_csv(const SimResult& result) {
    std::string out = "replication,process,aoi,pi0,pi1,pi2\n";
    for (std::size_t r = 0; r < result.replications.size(); ++r) {
        const Replication& rep = result.replications[r];
        for (std::size_t j = 0; j < rep.aoi.size(); ++j) {
            out += std::to_string(r) + "," + std::to_string(j) + "," + format_double(rep.aoi[j]);
            for (int s = 0; s < 3; ++s) out += "," + format_double(rep.occupancy[j][s]);
            out += "\n";
        }
    }
    return out;
}

nlohmann::json bnb_result_to_json(const BnbResult& result, long long theorem2_bound) {
    return json{{"p_star", result.p_star},
                {"objective", result.objective},
                {"lower_bound", result.lower_bound},
                {"gap", result.gap},
                {"iterations", result.iterations},
                {"nodes", result.nodes_explored},
                {"certified", result.certified},
                {"theorem2_bound", theorem2_bound}};
}

std::string format_double(double value) {
    char buffer[32];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, end);
}

} // namespace aoi
