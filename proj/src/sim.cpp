#include "aoi/sim.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <string>
#include <utility>

#include "aoi/rng.hpp"

namespace aoi {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

void check_sim_config(const SimConfig& sim) {
    if (!(sim.horizon > 0.0) || !std::isfinite(sim.horizon))
        throw InvalidHorizon("horizon must be positive finite");
    const double warmup = sim.effective_warmup();
    if (!(warmup >= 0.0) || warmup >= sim.horizon)
        throw InvalidHorizon("warmup must satisfy 0 <= warmup < horizon");
    if (sim.replications <= 0) throw Error("replications must be positive");
}

// Age integral of one sawtooth segment with fixed reference time,
// clipped to the measurement window.
double age_segment(double from, double to, double reference, double window_lo, double window_hi) {
    const double lo = std::max(from, window_lo);
    const double hi = std::min(to, window_hi);
    if (hi <= lo) return 0.0;
    const double a = lo - reference;
    const double b = hi - reference;
    return 0.5 * (b * b - a * a);
}

Replication run_replication(const SystemConfig& config, const PreemptionPolicy& policy,
                            double horizon, double warmup, std::uint64_t seed) {
    const int n = config.n_sensors;
    const int m = config.n_processes;
    const double measured = horizon - warmup;
    rng::Xoshiro256pp gen(seed);

    Replication rep;
    rep.aoi.assign(static_cast<std::size_t>(m), 0.0);
    rep.occupancy.assign(static_cast<std::size_t>(m), {0.0, 0.0, 0.0});

    std::vector<double> next_arrival(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) next_arrival[i] = gen.exponential(config.arrival_rates[i]);

    bool busy = false;
    double completion_time = kInfinity;
    Packet in_service;  // reused across admissions
    in_service.informative_for.assign(static_cast<std::size_t>(m), 0);
    std::vector<std::uint8_t> arrival_mask(static_cast<std::size_t>(m), 0);

    // Per process: generation time of the freshest delivered informative
    // packet, the time its age has been integrated up to, and the integral.
    std::vector<double> reference(static_cast<std::size_t>(m), 0.0);
    std::vector<double> integrated_to(static_cast<std::size_t>(m), 0.0);
    std::vector<double> age_integral(static_cast<std::size_t>(m), 0.0);

    double state_since = 0.0;

    auto accumulate_occupancy = [&](double until) {
        const double lo = std::max(state_since, warmup);
        const double hi = std::min(until, horizon);
        if (hi > lo) {
            const double dt = hi - lo;
            for (int j = 0; j < m; ++j) {
                const int state = busy ? (in_service.informative_for[j] ? 1 : 2) : 0;
                rep.occupancy[j][static_cast<std::size_t>(state)] += dt;
            }
        }
        state_since = until;
    };

    for (;;) {
        int sensor = -1;
        double arrival_time = kInfinity;
        for (int i = 0; i < n; ++i) {
            if (next_arrival[i] < arrival_time) {
                arrival_time = next_arrival[i];
                sensor = i;
            }
        }
        const double event_time = std::min(arrival_time, completion_time);
        if (event_time > horizon) break;

        accumulate_occupancy(event_time);

        if (completion_time <= arrival_time) {
            // Service completion delivers the packet to the monitor.
            ++rep.counts.completions;
            for (int j = 0; j < m; ++j) {
                if (!in_service.informative_for[j]) continue;
                age_integral[j] +=
                    age_segment(integrated_to[j], event_time, reference[j], warmup, horizon);
                reference[j] = in_service.generated_at;
                integrated_to[j] = event_time;
            }
            busy = false;
            completion_time = kInfinity;
        } else {
            ++rep.counts.arrivals;
            // Informativeness is sampled at generation, one draw per process.
            for (int j = 0; j < m; ++j)
                arrival_mask[j] = gen.bernoulli(config.corr(sensor, j)) ? 1 : 0;
            next_arrival[sensor] = event_time + gen.exponential(config.arrival_rates[sensor]);

            bool enters_service = false;
            if (!busy) {
                enters_service = true;
            } else if (gen.bernoulli(policy.probs[sensor])) {
                ++rep.counts.preemptions;  // packet in service is discarded
                enters_service = true;
            } else {
                ++rep.counts.drops;
            }
            if (enters_service) {
                busy = true;
                in_service.source = sensor;
                in_service.generated_at = event_time;
                in_service.informative_for = arrival_mask;
                completion_time = event_time + gen.exponential(config.service_rate);
            }
        }
    }

    accumulate_occupancy(horizon);
    rep.counts.in_service_at_end = busy ? 1 : 0;

    for (int j = 0; j < m; ++j) {
        age_integral[j] += age_segment(integrated_to[j], horizon, reference[j], warmup, horizon);
        rep.aoi[j] = age_integral[j] / measured;
        for (auto& fraction : rep.occupancy[j]) fraction /= measured;
    }
    return rep;
}

SimResult aggregate(std::vector<Replication> reps, int m) {
    SimResult result;
    const int r = static_cast<int>(reps.size());
    result.aoi_mean.assign(static_cast<std::size_t>(m), 0.0);
    result.aoi_ci_halfwidth.assign(static_cast<std::size_t>(m), 0.0);
    result.occupancy.assign(static_cast<std::size_t>(m), {0.0, 0.0, 0.0});

    for (const Replication& rep : reps) {
        result.counts.arrivals += rep.counts.arrivals;
        result.counts.preemptions += rep.counts.preemptions;
        result.counts.drops += rep.counts.drops;
        result.counts.completions += rep.counts.completions;
        result.counts.in_service_at_end += rep.counts.in_service_at_end;
        for (int j = 0; j < m; ++j) {
            result.aoi_mean[j] += rep.aoi[j];
            for (int s = 0; s < 3; ++s) result.occupancy[j][s] += rep.occupancy[j][s];
        }
    }
    for (int j = 0; j < m; ++j) {
        result.aoi_mean[j] /= r;
        for (int s = 0; s < 3; ++s) result.occupancy[j][s] /= r;
    }

    if (r > 1) {
        const double t = t_critical_95(r - 1);
        for (int j = 0; j < m; ++j) {
            double ss = 0.0;
            for (const Replication& rep : reps) {
                const double d = rep.aoi[j] - result.aoi_mean[j];
                ss += d * d;
            }
            result.aoi_ci_halfwidth[j] = t * std::sqrt(ss / (r - 1)) / std::sqrt(double(r));
        }
    }

    result.replications = std::move(reps);
    return result;
}

} // namespace

SimResult simulate(const SystemConfig& config, const PreemptionPolicy& policy, const SimConfig& sim) {
    validate_config(config, {.allow_uncovered = true});
    validate_policy(config, policy);
    check_sim_config(sim);

    const double warmup = sim.effective_warmup();
    std::vector<Replication> reps;
    reps.reserve(static_cast<std::size_t>(sim.replications));
    for (int k = 0; k < sim.replications; ++k)
        reps.push_back(run_replication(config, policy, sim.horizon, warmup,
                                       rng::stream_seed(sim.seed, static_cast<std::uint64_t>(k))));
    return aggregate(std::move(reps), config.n_processes);
}

SimResult simulate_reduced(const SystemConfig& config, const PreemptionPolicy& policy, int process,
                           const SimConfig& sim) {
    validate_config(config, {.allow_uncovered = true});
    validate_policy(config, policy);
    if (process < 0 || process >= config.n_processes)
        throw IndexOutOfRange("process index " + std::to_string(process) + " out of range");
    if (config.informative_rate(process) == 0.0) throw UncoveredProcess(process);

    const RateSummary rates = informative_rates(config, policy);
    const double stream_rates[4] = {
        rates.informative_preempting[process],
        rates.informative_nonpreempting[process],
        rates.channel_preempting - rates.informative_preempting[process],
        rates.channel_nonpreempting - rates.informative_nonpreempting[process],
    };
    const double stream_preempt[4] = {1.0, 0.0, 1.0, 0.0};
    const double stream_informative[4] = {1.0, 1.0, 0.0, 0.0};

    SystemConfig reduced;
    reduced.n_processes = 1;
    reduced.service_rate = config.service_rate;
    PreemptionPolicy reduced_policy;
    for (int s = 0; s < 4; ++s) {
        if (stream_rates[s] <= 0.0) continue;  // merged streams with zero rate vanish
        reduced.arrival_rates.push_back(stream_rates[s]);
        reduced.correlation.push_back(stream_informative[s]);
        reduced_policy.probs.push_back(stream_preempt[s]);
    }
    reduced.n_sensors = static_cast<int>(reduced.arrival_rates.size());

    return simulate(reduced, reduced_policy, sim);
}

OccupancyReport occupancy_check(const SimResult& result, const SystemConfig& config,
                                const PreemptionPolicy& policy, int process) {
    if (process < 0 || process >= static_cast<int>(result.occupancy.size()))
        throw IndexOutOfRange("process index " + std::to_string(process) + " out of range");
    const StationaryDistribution pi = stationary_distribution(config, policy, process);

    OccupancyReport report;
    report.empirical = result.occupancy[static_cast<std::size_t>(process)];
    report.expected = {pi.pi0, pi.pi1, pi.pi2};
    for (int s = 0; s < 3; ++s)
        report.max_abs_deviation =
            std::max(report.max_abs_deviation, std::fabs(report.empirical[s] - report.expected[s]));
    return report;
}

double t_critical_95(int degrees_of_freedom) {
    static constexpr double table[31] = {
        0.0,    12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
        2.201,  2.179,  2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086, 2.080,
        2.074,  2.069,  2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
    static constexpr std::pair<int, double> anchors[] = {
        {30, 2.042}, {40, 2.021}, {50, 2.009}, {60, 2.000}, {80, 1.990}, {100, 1.984}, {120, 1.980}};

    if (degrees_of_freedom < 1) throw Error("t critical value needs at least 1 degree of freedom");
    if (degrees_of_freedom <= 30) return table[degrees_of_freedom];
    if (degrees_of_freedom >= 120) return 1.96;
    for (std::size_t k = 1; k < std::size(anchors); ++k) {
        if (degrees_of_freedom <= anchors[k].first) {
            const auto [d0, t0] = anchors[k - 1];
            const auto [d1, t1] = anchors[k];
            const double w = double(degrees_of_freedom - d0) / double(d1 - d0);
            return t0 + w * (t1 - t0);
        }
    }
    return 1.96;
}

} // namespace aoi
