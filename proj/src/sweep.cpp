#include "aoi/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "aoi/analysis.hpp"
#include "aoi/bnb.hpp"
#include "aoi/json_io.hpp"

namespace aoi {

namespace {

const char* parameter_name(SweepSpec::Parameter p) {
    switch (p) {
        case SweepSpec::Parameter::Lambda: return "lambda";
        case SweepSpec::Parameter::Mu: return "mu";
        case SweepSpec::Parameter::PUniform: return "p_uniform";
        case SweepSpec::Parameter::Theta: return "theta";
    }
    return "?";
}

void validate_spec(const SweepSpec& spec) {
    if (spec.values.empty()) throw InvalidSweepParameter("sweep needs at least one value");
    for (std::size_t k = 1; k < spec.values.size(); ++k)
        if (!(spec.values[k - 1] < spec.values[k]))
            throw InvalidSweepParameter("sweep values must be strictly increasing");

    switch (spec.parameter) {
        case SweepSpec::Parameter::Lambda:
            if (spec.lambda_index < 1 || spec.lambda_index > spec.base.n_sensors)
                throw InvalidSweepParameter("lambda index out of range");
            if (spec.values.front() <= 0.0)
                throw InvalidSweepParameter("swept arrival rates must be positive");
            break;
        case SweepSpec::Parameter::Mu:
            if (spec.values.front() <= 0.0)
                throw InvalidSweepParameter("swept service rates must be positive");
            break;
        case SweepSpec::Parameter::PUniform:
            if (spec.values.front() < 0.0 || spec.values.back() > 1.0)
                throw InvalidSweepParameter("uniform preemption values must lie in [0,1]");
            break;
        case SweepSpec::Parameter::Theta:
            if (spec.base.n_sensors != 2 || spec.base.n_processes != 2)
                throw InvalidSweepParameter("theta sweeps require a 2x2 system");
            if (spec.values.front() < 0.0 || spec.values.back() > 1.0)
                throw InvalidSweepParameter("theta values must lie in [0,1]");
            break;
    }
    if (!(spec.epsilon0 > 0.0 && spec.epsilon0 < 1.0))
        throw InvalidSweepParameter("epsilon0 must lie in (0,1)");

    const bool needs_policy = spec.outputs.analysis || spec.outputs.simulation;
    if (needs_policy && !spec.policy && spec.parameter != SweepSpec::Parameter::PUniform)
        throw InvalidSweepParameter("analysis and simulation outputs need a preemption policy");
}

struct PointInputs {
    SystemConfig config;
    std::optional<PreemptionPolicy> policy;
};

PointInputs apply_value(const SweepSpec& spec, double value) {
    PointInputs point{spec.base, spec.policy};
    switch (spec.parameter) {
        case SweepSpec::Parameter::Lambda:
            point.config.arrival_rates[spec.lambda_index - 1] = value;
            break;
        case SweepSpec::Parameter::Mu:
            point.config.service_rate = value;
            break;
        case SweepSpec::Parameter::PUniform:
            point.policy = PreemptionPolicy::uniform(point.config.n_sensors, value);
            break;
        case SweepSpec::Parameter::Theta:
            point.config.correlation = {1.0, value, value, 1.0};
            break;
    }
    validate_config(point.config);
    return point;
}

std::vector<std::string> schema_header(const SweepSpec& spec) {
    std::vector<std::string> header{"parameter", "value"};
    const int n = spec.base.n_sensors;
    const int m = spec.base.n_processes;
    if (spec.outputs.analysis || spec.outputs.simulation)
        for (int i = 1; i <= n; ++i) header.push_back("p_" + std::to_string(i));
    if (spec.outputs.analysis)
        for (int j = 1; j <= m; ++j) header.push_back("aoi_theory_" + std::to_string(j));
    if (spec.outputs.simulation) {
        for (int j = 1; j <= m; ++j) header.push_back("aoi_sim_" + std::to_string(j));
        for (int j = 1; j <= m; ++j) header.push_back("aoi_ci_" + std::to_string(j));
    }
    if (spec.outputs.optimum) {
        for (int i = 1; i <= n; ++i) header.push_back("p_star_" + std::to_string(i));
        header.push_back("aoi_sum_opt");
        header.push_back("aoi_sum_p0");
        header.push_back("aoi_sum_p1");
        header.push_back("gap");
        header.push_back("certified");
    }
    if (spec.outputs.bounds) header.push_back("theorem2_bound");
    return header;
}

SweepRow compute_row(const SweepSpec& spec, double value) {
    const PointInputs point = apply_value(spec, value);

    SweepRow row;
    row.parameter = spec.parameter_label();
    row.value = value;

    if (spec.outputs.analysis || spec.outputs.simulation) {
        if (!point.policy)
            throw InvalidSweepParameter("analysis and simulation outputs need a preemption policy");
        row.policy_used = point.policy->probs;
    }
    if (spec.outputs.analysis)
        row.aoi_theory = aoi_sum(point.config, *point.policy).per_process;
    if (spec.outputs.simulation) {
        const SimResult sim = simulate(point.config, *point.policy, spec.sim);
        row.aoi_sim = sim.aoi_mean;
        row.aoi_ci = sim.aoi_ci_halfwidth;
    }
    if (spec.outputs.optimum) {
        const FractionalProgram fp = build_fractional_program(point.config);
        const BnbResult best = branch_and_bound(fp, spec.epsilon0);
        row.p_star = best.p_star;
        row.aoi_sum_opt = best.objective;
        row.gap = best.gap;
        row.certified = best.certified;
        row.aoi_sum_p0 =
            aoi_sum(point.config, PreemptionPolicy::none(point.config.n_sensors)).total;
        row.aoi_sum_p1 =
            aoi_sum(point.config, PreemptionPolicy::every(point.config.n_sensors)).total;
    }
    if (spec.outputs.bounds)
        row.theorem2_bound = iteration_upper_bound(point.config, spec.epsilon0);
    return row;
}

} // namespace

std::string SweepSpec::parameter_label() const {
    if (parameter == Parameter::Lambda) return "lambda_" + std::to_string(lambda_index);
    return parameter_name(parameter);
}

SweepResult run_sweep(const SweepSpec& spec, int jobs) {
    return run_sweeps(std::vector<SweepSpec>{spec}, jobs);
}

SweepResult run_sweeps(const std::vector<SweepSpec>& specs, int jobs) {
    if (specs.empty()) throw InvalidSweepParameter("no sweep specs given");
    for (const SweepSpec& spec : specs) validate_spec(spec);

    const std::vector<std::string> header = schema_header(specs.front());
    for (const SweepSpec& spec : specs)
        if (schema_header(spec) != header)
            throw InvalidSweepParameter("sweep specs disagree on the output schema");

    struct Task {
        const SweepSpec* spec;
        double value;
    };
    std::vector<Task> tasks;
    for (const SweepSpec& spec : specs)
        for (double value : spec.values) tasks.push_back({&spec, value});

    SweepResult result;
    result.header = header;
    result.rows.resize(tasks.size());

    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
    if (workers == 1) {
        for (std::size_t k = 0; k < tasks.size(); ++k)
            result.rows[k] = compute_row(*tasks[k].spec, tasks[k].value);
    } else {
        std::atomic<std::size_t> cursor{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            for (;;) {
                const std::size_t k = cursor.fetch_add(1);
                if (k >= tasks.size()) return;
                try {
                    result.rows[k] = compute_row(*tasks[k].spec, tasks[k].value);
                } catch (...) {
                    std::scoped_lock lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }
    return result;
}

std::string SweepResult::to_csv() const {
    std::string out;
    for (std::size_t k = 0; k < header.size(); ++k) {
        if (k) out += ",";
        out += header[k];
    }
    out += "\n";
    for (const SweepRow& row : rows) {
        std::vector<std::string> cells{row.parameter, format_double(row.value)};
        for (double p : row.policy_used) cells.push_back(format_double(p));
        for (double v : row.aoi_theory) cells.push_back(format_double(v));
        for (double v : row.aoi_sim) cells.push_back(format_double(v));
        for (double v : row.aoi_ci) cells.push_back(format_double(v));
        for (double v : row.p_star) cells.push_back(format_double(v));
        if (!row.p_star.empty()) {
            cells.push_back(format_double(row.aoi_sum_opt));
            cells.push_back(format_double(row.aoi_sum_p0));
            cells.push_back(format_double(row.aoi_sum_p1));
            cells.push_back(format_double(row.gap));
            cells.push_back(row.certified ? "true" : "false");
        }
        if (row.theorem2_bound != 0 || header.back() == "theorem2_bound")
            cells.push_back(std::to_string(row.theorem2_bound));
        if (cells.size() != header.size())
            throw Error("sweep row does not match the header schema");
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (k) out += ",";
            out += cells[k];
        }
        out += "\n";
    }
    return out;
}

std::vector<std::string> sweep_preset_names() {
    return {"fig3a", "fig3b", "fig5a", "fig5b", "fig6a", "fig6b"};
}

std::vector<SweepSpec> sweep_preset(const std::string& name) {
    const SystemConfig half_corr{2, 2, {0.5, 1.0}, 2.0, {1.0, 0.5, 0.5, 1.0}};

    if (name == "fig3a" || name == "fig3b") {
        SweepSpec base_spec;
        base_spec.base = half_corr;
        base_spec.outputs = {.analysis = true, .simulation = true};
        base_spec.sim = SimConfig{1e6, std::nullopt, 1, 10};
        if (name == "fig3a") {
            base_spec.parameter = SweepSpec::Parameter::Lambda;
            base_spec.lambda_index = 1;
            base_spec.values = {0.5, 1.0, 2.0, 4.0, 8.0};
        } else {
            base_spec.base.arrival_rates = {1.0, 6.0};
            base_spec.parameter = SweepSpec::Parameter::Mu;
            base_spec.values = {1.0, 2.0, 4.0, 8.0};
        }
        std::vector<SweepSpec> specs;
        for (double p : {0.0, 0.5, 1.0}) {
            SweepSpec spec = base_spec;
            spec.policy = PreemptionPolicy::uniform(2, p);
            specs.push_back(std::move(spec));
        }
        return specs;
    }

    // The optimum sweeps fix the parameters the figures leave open:
    // lambda_2 = 1 and mu = 2 unless stated otherwise.
    SweepSpec spec;
    spec.outputs = {.optimum = true, .bounds = true};
    spec.epsilon0 = 1e-6;
    if (name == "fig5a") {
        spec.base = SystemConfig{2, 2, {0.25, 1.0}, 2.0, {1.0, 0.0, 0.0, 1.0}};
        spec.parameter = SweepSpec::Parameter::Lambda;
        spec.lambda_index = 1;
        spec.values = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
        return {spec};
    }
    if (name == "fig5b") {
        // Illustration only: sensor 1 reports both processes, sensor 2 one.
        spec.base = SystemConfig{2, 2, {0.25, 1.0}, 2.0, {1.0, 1.0, 0.0, 1.0}};
        spec.parameter = SweepSpec::Parameter::Lambda;
        spec.lambda_index = 1;
        spec.values = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
        return {spec};
    }
    if (name == "fig6a") {
        spec.base = SystemConfig{2, 2, {1.0, 4.0}, 2.0, {1.0, 0.05, 0.05, 1.0}};
        spec.parameter = SweepSpec::Parameter::Theta;
        spec.values = {0.05, 0.1, 0.2, 0.4, 0.6, 0.8, 1.0};
        return {spec};
    }
    if (name == "fig6b") {
        // Illustration only: sensor 1 has the larger row sum, sensor 2 the
        // more even coverage.
        spec.base = SystemConfig{2, 2, {0.25, 1.0}, 2.0, {1.0, 0.3, 0.55, 0.55}};
        spec.parameter = SweepSpec::Parameter::Lambda;
        spec.lambda_index = 1;
        spec.values = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
        return {spec};
    }
    throw InvalidSweepParameter("unknown preset \"" + name + "\"");
}

SweepSpec parse_sweep_spec_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigParseError("sweep spec must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        static const char* allowed[] = {"parameter", "index", "values", "base", "outputs", "epsilon"};
        if (std::find(std::begin(allowed), std::end(allowed), key) == std::end(allowed))
            throw ConfigParseError("unknown key \"" + key + "\" in sweep spec");
    }

    SweepSpec spec;
    const std::string parameter = doc.value("parameter", std::string("lambda"));
    if (parameter == "lambda") spec.parameter = SweepSpec::Parameter::Lambda;
    else if (parameter == "mu") spec.parameter = SweepSpec::Parameter::Mu;
    else if (parameter == "p_uniform") spec.parameter = SweepSpec::Parameter::PUniform;
    else if (parameter == "theta") spec.parameter = SweepSpec::Parameter::Theta;
    else throw InvalidSweepParameter("unknown sweep parameter \"" + parameter + "\"");

    if (doc.contains("index")) spec.lambda_index = doc.at("index").get<int>();
    if (!doc.contains("values")) throw ConfigParseError("sweep spec needs \"values\"");
    spec.values = doc.at("values").get<std::vector<double>>();
    if (!doc.contains("base")) throw ConfigParseError("sweep spec needs \"base\"");
    const ParsedConfig base = parse_config(doc.at("base"));
    spec.base = base.system;
    spec.policy = base.policy;
    spec.sim = base.sim;
    if (doc.contains("epsilon")) spec.epsilon0 = doc.at("epsilon").get<double>();

    if (!doc.contains("outputs")) throw ConfigParseError("sweep spec needs \"outputs\"");
    for (const auto& entry : doc.at("outputs")) {
        const std::string output = entry.get<std::string>();
        if (output == "analysis") spec.outputs.analysis = true;
        else if (output == "simulation") spec.outputs.simulation = true;
        else if (output == "optimum") spec.outputs.optimum = true;
        else if (output == "bounds") spec.outputs.bounds = true;
        else throw ConfigParseError("unknown sweep output \"" + output + "\"");
    }
    return spec;
}

SweepSpec parse_sweep_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParseError("cannot open sweep spec file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_sweep_spec_json(buffer.str());
}

} // namespace aoi
