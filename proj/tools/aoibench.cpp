// aoibench: analyze, simulate, and optimize preemption policies for
// correlated status-update systems, plus the preset parameter sweeps.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "aoi/analysis.hpp"
#include "aoi/bnb.hpp"
#include "aoi/json_io.hpp"
#include "aoi/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitInput = 2;

struct CommonOptions {
    std::string config_path;
    std::string out_path;  // empty = stdout
};

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw aoi::Error("cannot open output file: " + out_path);
    out << content;
}

aoi::PreemptionPolicy require_policy(const aoi::ParsedConfig& parsed) {
    if (!parsed.policy)
        throw aoi::ConfigParseError("config needs a \"preemption\" array for this command");
    return *parsed.policy;
}

struct SimFlags {
    std::optional<double> horizon, warmup;
    std::optional<std::uint64_t> seed;
    std::optional<int> replications;

    void apply(aoi::SimConfig& sim) const {
        if (horizon) sim.horizon = *horizon;
        if (warmup) sim.warmup = *warmup;
        if (seed) sim.seed = *seed;
        if (replications) sim.replications = *replications;
    }
};

void add_sim_flags(CLI::App* cmd, SimFlags& flags) {
    cmd->add_option("--horizon", flags.horizon, "simulated time units");
    cmd->add_option("--warmup", flags.warmup, "time discarded before measurement");
    cmd->add_option("--seed", flags.seed, "master seed");
    cmd->add_option("--reps", flags.replications, "replication count");
}

int run_analyze(const CommonOptions& common, bool allow_uncovered) {
    const aoi::ParsedConfig parsed = aoi::parse_config_file(common.config_path);
    aoi::validate_config(parsed.system, {.allow_uncovered = allow_uncovered});
    const aoi::PreemptionPolicy policy = require_policy(parsed);
    const aoi::AoiReport report =
        aoi::aoi_sum(parsed.system, policy,
                     allow_uncovered ? aoi::UncoveredMode::Infinity : aoi::UncoveredMode::Error);
    write_output(common.out_path,
                 aoi::analysis_to_json(parsed.system, policy, report).dump(2) + "\n");
    return kExitOk;
}

int run_simulate(const CommonOptions& common, const SimFlags& flags, bool csv) {
    const aoi::ParsedConfig parsed = aoi::parse_config_file(common.config_path);
    aoi::validate_config(parsed.system);
    const aoi::PreemptionPolicy policy = require_policy(parsed);
    aoi::SimConfig sim = parsed.sim;
    flags.apply(sim);
    const aoi::SimResult result = aoi::simulate(parsed.system, policy, sim);
    if (csv)
        write_output(common.out_path, aoi::sim_result_to_csv(result));
    else
        write_output(common.out_path, aoi::sim_result_to_json(result, sim).dump(2) + "\n");
    return kExitOk;
}

int run_optimize(const CommonOptions& common, double epsilon) {
    const aoi::ParsedConfig parsed = aoi::parse_config_file(common.config_path);
    aoi::validate_config(parsed.system);
    const aoi::FractionalProgram fp = aoi::build_fractional_program(parsed.system);
    const aoi::BnbResult result = aoi::branch_and_bound(fp, epsilon);
    const long long bound = aoi::iteration_upper_bound(parsed.system, epsilon);
    if (result.iterations > bound)
        std::cerr << "note: search used " << result.iterations
                  << " iterations, above the reported bound of " << bound << "\n";
    write_output(common.out_path, aoi::bnb_result_to_json(result, bound).dump(2) + "\n");
    return kExitOk;
}

int run_bound(const CommonOptions& common, double epsilon) {
    const aoi::ParsedConfig parsed = aoi::parse_config_file(common.config_path);
    aoi::validate_config(parsed.system);
    const long long bound = aoi::iteration_upper_bound(parsed.system, epsilon);
    nlohmann::json doc{{"epsilon0", epsilon}, {"theorem2_bound", bound}};
    write_output(common.out_path, doc.dump(2) + "\n");
    return kExitOk;
}

int run_sweep_cmd(const std::string& preset, const std::string& spec_path,
                  const std::string& out_path, const SimFlags& flags,
                  std::optional<double> epsilon, int jobs) {
    std::vector<aoi::SweepSpec> specs;
    if (!preset.empty() && !spec_path.empty())
        throw aoi::InvalidSweepParameter("--preset and --spec are mutually exclusive");
    if (!preset.empty())
        specs = aoi::sweep_preset(preset);
    else if (!spec_path.empty())
        specs = {aoi::parse_sweep_spec_file(spec_path)};
    else
        throw aoi::InvalidSweepParameter("sweep needs --preset or --spec");

    for (aoi::SweepSpec& spec : specs) {
        flags.apply(spec.sim);
        if (epsilon) spec.epsilon0 = *epsilon;
    }
    const aoi::SweepResult result = aoi::run_sweeps(specs, jobs);
    write_output(out_path, result.to_csv());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Age-of-information analysis, simulation, and preemption optimization"};
    app.require_subcommand(1);

    CommonOptions common;
    SimFlags sim_flags;
    bool allow_uncovered = false;
    bool csv = false;
    double epsilon = 0.01;
    std::optional<double> sweep_epsilon;
    std::string preset, spec_path;
    int jobs = 1;

    CLI::App* analyze = app.add_subcommand("analyze", "closed-form per-process age");
    analyze->add_option("config", common.config_path, "JSON config")->required();
    analyze->add_option("--out", common.out_path, "output path (default stdout)");
    analyze->add_flag("--allow-uncovered", allow_uncovered,
                      "report infinite age for uncovered processes instead of failing");

    CLI::App* simulate = app.add_subcommand("simulate", "discrete-event simulation");
    simulate->add_option("config", common.config_path, "JSON config")->required();
    simulate->add_option("--out", common.out_path, "output path (default stdout)");
    simulate->add_flag("--csv", csv, "emit per-replication CSV instead of JSON");
    add_sim_flags(simulate, sim_flags);

    CLI::App* optimize = app.add_subcommand("optimize", "certified optimal preemption policy");
    optimize->add_option("config", common.config_path, "JSON config")->required();
    optimize->add_option("--out", common.out_path, "output path (default stdout)");
    optimize->add_option("--epsilon", epsilon, "certified gap (default 0.01)");

    CLI::App* bound = app.add_subcommand("bound", "iteration bound for the certified search");
    bound->add_option("config", common.config_path, "JSON config")->required();
    bound->add_option("--out", common.out_path, "output path (default stdout)");
    bound->add_option("--epsilon", epsilon, "certified gap (default 0.01)");

    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweeps to CSV");
    sweep->add_option("--preset", preset, "one of: fig3a fig3b fig5a fig5b fig6a fig6b");
    sweep->add_option("--spec", spec_path, "sweep spec JSON file");
    sweep->add_option("--out", common.out_path, "output path (default stdout)");
    sweep->add_option("--epsilon", sweep_epsilon, "override the spec's certified gap");
    sweep->add_option("--jobs", jobs, "worker threads (default 1)");
    add_sim_flags(sweep, sim_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*analyze) return run_analyze(common, allow_uncovered);
        if (*simulate) return run_simulate(common, sim_flags, csv);
        if (*optimize) return run_optimize(common, epsilon);
        if (*bound) return run_bound(common, epsilon);
        if (*sweep) return run_sweep_cmd(preset, spec_path, common.out_path, sim_flags,
                                         sweep_epsilon, jobs);
    } catch (const aoi::ConfigParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const aoi::DimensionMismatch& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const aoi::NonPositiveRate& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const aoi::CorrelationOutOfRange& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const aoi::ProbabilityOutOfRange& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const aoi::UncoveredProcess& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const aoi::InvalidSweepParameter& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const aoi::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
