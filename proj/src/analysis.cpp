#include "aoi/analysis.hpp"

#include <limits>
#include <string>

namespace aoi {

namespace {

void check_process_index(const SystemConfig& config, int process) {
    if (process < 0 || process >= config.n_processes)
        throw IndexOutOfRange("process index " + std::to_string(process) + " out of range");
}

} // namespace

StationaryDistribution stationary_distribution(const SystemConfig& config,
                                               const PreemptionPolicy& policy, int process) {
    check_process_index(config, process);
    const RateSummary rates = informative_rates(config, policy);
    const double mu = config.service_rate;
    const double lc = rates.channel_total;
    const double lc_pre = rates.channel_preempting;
    const double inf_pre = rates.informative_preempting[process];
    const double inf_non = rates.informative_nonpreempting[process];

    StationaryDistribution pi;
    pi.pi0 = mu / (lc + mu);
    pi.pi1 = (lc * inf_pre + inf_non * mu + inf_pre * mu) / ((lc + mu) * (lc_pre + mu));
    // Complement keeps the triple normalized in floating point; the
    // standalone expression is checked in tests.
    pi.pi2 = 1.0 - pi.pi0 - pi.pi1;
    return pi;
}

double aoi_process(const SystemConfig& config, const PreemptionPolicy& policy, int process,
                   UncoveredMode mode) {
    check_process_index(config, process);
    validate_policy(config, policy);
    if (config.informative_rate(process) == 0.0) {
        if (mode == UncoveredMode::Infinity) return std::numeric_limits<double>::infinity();
        throw UncoveredProcess(process);
    }

    const double mu = config.service_rate;
    const double lc = config.channel_rate();
    const double mu_lc = mu + lc;

    double numerator = mu * mu_lc * mu_lc;
    double den_sum = 0.0;
    for (int i = 0; i < config.n_sensors; ++i) {
        const double rate = config.arrival_rates[i];
        const double c = config.corr(i, process);
        const double p = policy.probs[i];
        numerator += (mu * lc * c * (1.0 - p) + mu_lc * mu_lc * p) * rate;
        den_sum += (lc * p + mu) * c * rate;
    }
    return numerator / (mu * mu_lc * den_sum);
}

AoiReport aoi_sum(const SystemConfig& config, const PreemptionPolicy& policy, UncoveredMode mode) {
    AoiReport report;
    report.per_process.reserve(static_cast<std::size_t>(config.n_processes));
    for (int j = 0; j < config.n_processes; ++j) {
        const double age = aoi_process(config, policy, j, mode);
        report.per_process.push_back(age);
        report.total += age;
    }
    return report;
}

double aoi_full_preemption(const SystemConfig& config, int process) {
    check_process_index(config, process);
    const double informative = config.informative_rate(process);
    if (informative == 0.0) throw UncoveredProcess(process);
    const double mu = config.service_rate;
    const double lc = config.channel_rate();
    return (lc + mu) / (mu * informative);
}

double aoi_no_preemption(const SystemConfig& config, int process) {
    check_process_index(config, process);
    const double informative = config.informative_rate(process);
    if (informative == 0.0) throw UncoveredProcess(process);
    const double mu = config.service_rate;
    const double lc = config.channel_rate();
    return lc / (mu * (lc + mu)) + (lc + mu) / (mu * informative);
}

} // namespace aoi
