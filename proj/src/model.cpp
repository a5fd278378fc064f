#include "aoi/model.hpp"

#include <cmath>
#include <string>

namespace aoi {

double SystemConfig::channel_rate() const {
    double total = 0.0;
    for (double rate : arrival_rates) total += rate;
    return total;
}

double SystemConfig::informative_rate(int process) const {
    double total = 0.0;
    for (int i = 0; i < n_sensors; ++i) total += corr(i, process) * arrival_rates[i];
    return total;
}

const SystemConfig& validate_config(const SystemConfig& config, ValidateOptions options) {
    if (config.n_sensors <= 0 || config.n_processes <= 0)
        throw DimensionMismatch("sensor and process counts must be positive");
    if (config.arrival_rates.size() != static_cast<std::size_t>(config.n_sensors))
        throw DimensionMismatch("arrival_rates has " + std::to_string(config.arrival_rates.size()) +
                                " entries, expected " + std::to_string(config.n_sensors));
    if (config.correlation.size() !=
        static_cast<std::size_t>(config.n_sensors) * static_cast<std::size_t>(config.n_processes))
        throw DimensionMismatch("correlation matrix is not n_sensors x n_processes");

    for (double rate : config.arrival_rates)
        if (!std::isfinite(rate) || rate <= 0.0)
            throw NonPositiveRate("arrival rates must be positive finite");
    if (!std::isfinite(config.service_rate) || config.service_rate <= 0.0)
        throw NonPositiveRate("service rate must be positive finite");

    for (double c : config.correlation)
        if (!(c >= 0.0 && c <= 1.0))
            throw CorrelationOutOfRange("correlation entries must lie in [0,1]");

    if (!options.allow_uncovered) {
        for (int j = 0; j < config.n_processes; ++j)
            if (config.informative_rate(j) == 0.0) throw UncoveredProcess(j);
    }
    return config;
}

void validate_policy(const SystemConfig& config, const PreemptionPolicy& policy) {
    if (policy.probs.size() != static_cast<std::size_t>(config.n_sensors))
        throw DimensionMismatch("preemption policy has " + std::to_string(policy.probs.size()) +
                                " entries, expected " + std::to_string(config.n_sensors));
    for (double p : policy.probs)
        if (!(p >= 0.0 && p <= 1.0))
            throw ProbabilityOutOfRange("preemption probabilities must lie in [0,1]");
}

RateSummary informative_rates(const SystemConfig& config, const PreemptionPolicy& policy) {
    validate_policy(config, policy);

    RateSummary rates;
    rates.informative_preempting.assign(config.n_processes, 0.0);
    rates.informative_nonpreempting.assign(config.n_processes, 0.0);

    for (int i = 0; i < config.n_sensors; ++i) {
        const double preempting = config.arrival_rates[i] * policy.probs[i];
        const double passive = config.arrival_rates[i] - preempting;
        rates.channel_preempting += preempting;
        rates.channel_nonpreempting += passive;
        for (int j = 0; j < config.n_processes; ++j) {
            const double c = config.corr(i, j);
            rates.informative_preempting[j] += preempting * c;
            rates.informative_nonpreempting[j] += passive * c;
        }
    }
    rates.channel_total = rates.channel_preempting + rates.channel_nonpreempting;
    return rates;
}

} // namespace aoi
