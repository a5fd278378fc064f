#pragma once

#include <cstddef>
#include <vector>

#include "aoi/errors.hpp"

namespace aoi {

/// Static description of the update system: N sensors feeding one
/// exponential server, M monitored processes, and the probability
/// corr(i,j) that a packet from sensor i carries the state of process j.
struct SystemConfig {
    int n_sensors = 0;
    int n_processes = 0;
    std::vector<double> arrival_rates;  // per sensor, packets per unit time
    double service_rate = 0.0;
    std::vector<double> correlation;    // row-major n_sensors x n_processes

    double corr(int sensor, int process) const {
        return correlation[static_cast<std::size_t>(sensor) * n_processes + process];
    }

    /// Aggregate arrival rate over all sensors.
    double channel_rate() const;

    /// Total informative arrival rate for one process, sum_i corr(i,j) * lambda_i.
    double informative_rate(int process) const;
};

/// Per-sensor probability that an arriving packet replaces the one in service.
struct PreemptionPolicy {
    std::vector<double> probs;

    static PreemptionPolicy uniform(int n_sensors, double p) {
        return PreemptionPolicy{std::vector<double>(static_cast<std::size_t>(n_sensors), p)};
    }
    static PreemptionPolicy none(int n_sensors) { return uniform(n_sensors, 0.0); }
    static PreemptionPolicy every(int n_sensors) { return uniform(n_sensors, 1.0); }
};

/// Arrival rates split by informativeness and by preemption capability.
struct RateSummary {
    std::vector<double> informative_preempting;     // per process
    std::vector<double> informative_nonpreempting;  // per process
    double channel_total = 0.0;
    double channel_preempting = 0.0;
    double channel_nonpreempting = 0.0;
};

struct ValidateOptions {
    bool allow_uncovered = false;  // accept processes no sensor reports on
};

/// Checks every structural invariant of the config and returns it unchanged.
const SystemConfig& validate_config(const SystemConfig& config, ValidateOptions options = {});

void validate_policy(const SystemConfig& config, const PreemptionPolicy& policy);

RateSummary informative_rates(const SystemConfig& config, const PreemptionPolicy& policy);

} // namespace aoi
