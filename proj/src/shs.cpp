#include "aoi/shs.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "aoi/linalg.hpp"

namespace aoi {

namespace {

// Arrival rates feeding the three-state chain for one process.
struct ChainRates {
    double mu;
    double channel;         // all arrivals
    double channel_pre;     // arrivals that can preempt
    double inf_pre;         // informative and preempting
    double inf_non;         // informative, not preempting
    double resid_uninf;     // uninformative arrivals hitting an idle server
    double resid_pre;       // uninformative arrivals that can preempt
};

ChainRates chain_rates(const SystemConfig& config, const RateSummary& rates, int process) {
    ChainRates r{};
    r.mu = config.service_rate;
    r.channel = rates.channel_total;
    r.channel_pre = rates.channel_preempting;
    r.inf_pre = rates.informative_preempting[process];
    r.inf_non = rates.informative_nonpreempting[process];
    r.resid_uninf = r.channel - r.inf_pre - r.inf_non;
    r.resid_pre = r.channel_pre - r.inf_pre;

    // Per-process rates never exceed the channel aggregates; tiny negative
    // residuals are rounding, anything larger is a construction bug.
    const double slack = 1e-12 * (r.channel + r.mu);
    if (r.resid_uninf < -slack || r.resid_pre < -slack)
        throw Error("chain rate residual is negative: per-process rates exceed channel totals");
    if (r.resid_uninf < 0.0) r.resid_uninf = 0.0;
    if (r.resid_pre < 0.0) r.resid_pre = 0.0;
    return r;
}

StationaryDistribution solve_stationary(const ChainRates& r) {
    // pi D = pi Q, rewritten as (D - Q)^T pi^T = 0 with one balance
    // equation replaced by the normalization sum(pi) = 1.
    const double d[3] = {r.channel, r.mu + r.channel_pre, r.mu + r.inf_pre};
    const double q[3][3] = {
        {0.0, r.inf_pre + r.inf_non, r.resid_uninf},
        {r.mu, r.inf_pre, r.resid_pre},
        {r.mu, r.inf_pre, 0.0},
    };

    std::vector<double> a(9, 0.0);
    std::vector<double> rhs(3, 0.0);
    for (int row = 0; row < 3; ++row)
        for (int col = 0; col < 3; ++col)
            a[static_cast<std::size_t>(row) * 3 + col] =
                (row == col ? d[col] : 0.0) - q[col][row];
    for (int col = 0; col < 3; ++col) a[2 * 3 + col] = 1.0;
    rhs[2] = 1.0;

    const std::vector<double> pi = linalg::lu_solve(a, rhs);
    return StationaryDistribution{pi[0], pi[1], pi[2]};
}

} // namespace

ShsSolution shs_oracle_aoi(const SystemConfig& config, const PreemptionPolicy& policy, int process) {
    if (process < 0 || process >= config.n_processes)
        throw IndexOutOfRange("process index " + std::to_string(process) + " out of range");
    if (config.informative_rate(process) == 0.0) throw UncoveredProcess(process);

    const RateSummary rates = informative_rates(config, policy);
    const ChainRates r = chain_rates(config, rates, process);

    ShsSolution solution;
    solution.pi = solve_stationary(r);

    // v_bar D = pi B + v_bar R, solved as (D - R)^T v_bar^T = (pi B)^T.
    const double d6[6] = {r.channel,          r.channel,
                          r.mu + r.channel_pre, r.mu + r.channel_pre,
                          r.mu + r.inf_pre,     r.mu + r.inf_pre};
    const double rmat[6][6] = {
        {0.0, 0.0, r.inf_pre + r.inf_non, 0.0, r.resid_uninf, 0.0},
        {0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
        {0.0, 0.0, r.inf_pre, 0.0, r.resid_pre, 0.0},
        {r.mu, 0.0, 0.0, 0.0, 0.0, 0.0},
        {r.mu, 0.0, r.inf_pre, 0.0, 0.0, 0.0},
        {0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
    };
    const double pi_b[6] = {solution.pi.pi0, 0.0,
                            solution.pi.pi1, solution.pi.pi1,
                            solution.pi.pi2, 0.0};

    std::vector<double> a(36, 0.0);
    std::vector<double> rhs(pi_b, pi_b + 6);
    for (int row = 0; row < 6; ++row)
        for (int col = 0; col < 6; ++col)
            a[static_cast<std::size_t>(row) * 6 + col] =
                (row == col ? d6[col] : 0.0) - rmat[col][row];

    const std::vector<double> v = linalg::lu_solve(a, rhs);
    for (int k = 0; k < 6; ++k) solution.v_bar[static_cast<std::size_t>(k)] = v[k];
    solution.aoi = v[0] + v[2] + v[4];
    return solution;
}

double aoi_rate_form(const RateSummary& rates, double service_rate, int process) {
    const double mu = service_rate;
    const double lc = rates.channel_total;
    const double ltc = rates.channel_preempting;
    const double lt = rates.informative_preempting[process];
    const double ld = rates.informative_nonpreempting[process];

    const double numerator = lc * lc * ltc + lc * lc * mu + lc * ld * mu + 2.0 * lc * ltc * mu +
                             2.0 * lc * mu * mu + ltc * mu * mu + mu * mu * mu;
    const double denominator =
        mu * (lc * lc * lt + lc * ld * mu + 2.0 * lc * lt * mu + ld * mu * mu + lt * mu * mu);
    if (denominator == 0.0) throw UncoveredProcess(process);
    return numerator / denominator;
}

} // namespace aoi
