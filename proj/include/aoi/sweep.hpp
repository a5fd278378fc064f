#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aoi/model.hpp"
#include "aoi/sim.hpp"

namespace aoi {

struct SweepOutputs {
    bool analysis = false;
    bool simulation = false;
    bool optimum = false;
    bool bounds = false;
};

/// One family of runs: a base config, one swept parameter, and the
/// outputs to compute per value.
struct SweepSpec {
    enum class Parameter { Lambda, Mu, PUniform, Theta };

    Parameter parameter = Parameter::Lambda;
    int lambda_index = 1;  // 1-based sensor index, Parameter::Lambda only
    std::vector<double> values;
    SystemConfig base;
    std::optional<PreemptionPolicy> policy;
    SweepOutputs outputs;
    double epsilon0 = 0.01;
    SimConfig sim;

    std::string parameter_label() const;
};

struct SweepRow {
    std::string parameter;
    double value = 0.0;
    std::vector<double> policy_used;  // filled when analysis or simulation ran
    std::vector<double> aoi_theory;
    std::vector<double> aoi_sim;
    std::vector<double> aoi_ci;
    std::vector<double> p_star;
    double aoi_sum_opt = 0.0;
    double aoi_sum_p0 = 0.0;
    double aoi_sum_p1 = 0.0;
    double gap = 0.0;
    bool certified = false;
    long long theorem2_bound = 0;
};

struct SweepResult {
    std::vector<std::string> header;
    std::vector<SweepRow> rows;

    std::string to_csv() const;
};

/// Runs every value of one spec; `jobs` bounds the worker threads. Rows
/// come back in value order regardless of scheduling.
SweepResult run_sweep(const SweepSpec& spec, int jobs = 1);

/// Runs several specs sharing one schema and stacks their rows.
SweepResult run_sweeps(const std::vector<SweepSpec>& specs, int jobs = 1);

/// Named preset sweeps; throws InvalidSweepParameter for unknown names.
std::vector<SweepSpec> sweep_preset(const std::string& name);
std::vector<std::string> sweep_preset_names();

SweepSpec parse_sweep_spec_json(const std::string& text);
SweepSpec parse_sweep_spec_file(const std::string& path);

} // namespace aoi
