#pragma once

#include <vector>

#include "aoi/model.hpp"

namespace aoi {

/// Server-state probabilities from one process's point of view:
/// idle, busy with a packet informative for it, busy with an
/// uninformative packet.
struct StationaryDistribution {
    double pi0 = 0.0;
    double pi1 = 0.0;
    double pi2 = 0.0;
};

struct AoiReport {
    std::vector<double> per_process;
    double total = 0.0;
};

/// Behavior when a process has zero informative arrival rate.
enum class UncoveredMode { Error, Infinity };

StationaryDistribution stationary_distribution(const SystemConfig& config,
                                               const PreemptionPolicy& policy, int process);

/// Time-average age of one process under the given preemption policy.
double aoi_process(const SystemConfig& config, const PreemptionPolicy& policy, int process,
                   UncoveredMode mode = UncoveredMode::Error);

AoiReport aoi_sum(const SystemConfig& config, const PreemptionPolicy& policy,
                  UncoveredMode mode = UncoveredMode::Error);

/// Age when every packet preempts (policy all ones).
double aoi_full_preemption(const SystemConfig& config, int process);

/// Age when no packet ever preempts (policy all zeros).
double aoi_no_preemption(const SystemConfig& config, int process);

} // namespace aoi
