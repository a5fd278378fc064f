#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "aoi/analysis.hpp"
#include "aoi/model.hpp"

namespace aoi {

struct SimConfig {
    double horizon = 1e6;          // simulated time units
    std::optional<double> warmup;  // measurement starts here; default 1% of horizon
    std::uint64_t seed = 1;
    int replications = 1;

    double effective_warmup() const { return warmup ? *warmup : 0.01 * horizon; }
};

/// One status update: its origin, generation time, and which processes
/// it carries (Bernoulli(corr) per process, drawn at generation).
struct Packet {
    int source = 0;
    double generated_at = 0.0;
    std::vector<std::uint8_t> informative_for;
};

struct EventCounts {
    std::uint64_t arrivals = 0;
    std::uint64_t preemptions = 0;
    std::uint64_t drops = 0;
    std::uint64_t completions = 0;
    int in_service_at_end = 0;
};

struct Replication {
    std::vector<double> aoi;                       // per process
    std::vector<std::array<double, 3>> occupancy;  // per process, time fractions
    EventCounts counts;
};

struct SimResult {
    std::vector<double> aoi_mean;
    std::vector<double> aoi_ci_halfwidth;          // 95% t-interval over replications
    std::vector<std::array<double, 3>> occupancy;  // mean fractions per process
    EventCounts counts;                            // summed over replications
    std::vector<Replication> replications;
};

/// Event-driven simulation of the full system: per-sensor Poisson
/// arrivals, one exponential server, zero buffer, source-probabilistic
/// preemption. Deterministic for a fixed (config, policy, sim) triple.
SimResult simulate(const SystemConfig& config, const PreemptionPolicy& policy, const SimConfig& sim);

/// Simulates the reduced system seen by one process: an informative
/// preempting stream, an informative non-preempting stream, and the two
/// residual uninformative streams. Reports that process only.
SimResult simulate_reduced(const SystemConfig& config, const PreemptionPolicy& policy, int process,
                           const SimConfig& sim);

struct OccupancyReport {
    std::array<double, 3> empirical{};
    std::array<double, 3> expected{};
    double max_abs_deviation = 0.0;
};

/// Compares empirical state fractions with the closed-form stationary
/// distribution for one process.
OccupancyReport occupancy_check(const SimResult& result, const SystemConfig& config,
                                const PreemptionPolicy& policy, int process);

/// Two-sided 95% Student t critical value (replication confidence intervals).
double t_critical_95(int degrees_of_freedom);

} // namespace aoi
