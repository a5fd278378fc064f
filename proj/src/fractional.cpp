#include "aoi/fractional.hpp"

#include <cmath>
#include <string>

namespace aoi {

double FractionalProgram::numerator(int ratio, std::span<const double> p) const {
    double value = g0[ratio];
    const double* row = g.data() + static_cast<std::size_t>(ratio) * n_vars;
    for (int i = 0; i < n_vars; ++i) value += row[i] * p[i];
    return value;
}

double FractionalProgram::denominator(int ratio, std::span<const double> p) const {
    double value = f0[ratio];
    const double* row = f.data() + static_cast<std::size_t>(ratio) * n_vars;
    for (int i = 0; i < n_vars; ++i) value += row[i] * p[i];
    return value;
}

FractionalProgram build_fractional_program(const SystemConfig& config) {
    validate_config(config);

    FractionalProgram fp;
    fp.n_vars = config.n_sensors;
    fp.n_ratios = config.n_processes;
    fp.service_rate = config.service_rate;
    fp.channel_rate = config.channel_rate();
    const double mu = fp.service_rate;
    const double lc = fp.channel_rate;
    const double mu_lc_sq = (mu + lc) * (mu + lc);

    fp.g0.assign(static_cast<std::size_t>(fp.n_ratios), 0.0);
    fp.f0.assign(static_cast<std::size_t>(fp.n_ratios), 0.0);
    fp.g.assign(static_cast<std::size_t>(fp.n_ratios) * fp.n_vars, 0.0);
    fp.f.assign(static_cast<std::size_t>(fp.n_ratios) * fp.n_vars, 0.0);

    for (int j = 0; j < fp.n_ratios; ++j) {
        const double informative = config.informative_rate(j);
        fp.g0[j] = mu * mu_lc_sq + mu * lc * informative;
        fp.f0[j] = (mu + lc) * mu * mu * informative;
        for (int i = 0; i < fp.n_vars; ++i) {
            const double rate = config.arrival_rates[i];
            const double c = config.corr(i, j);
            fp.g[static_cast<std::size_t>(j) * fp.n_vars + i] = (mu_lc_sq - mu * lc * c) * rate;
            fp.f[static_cast<std::size_t>(j) * fp.n_vars + i] = lc * mu * (mu + lc) * c * rate;
        }
    }
    return fp;
}

double eval_objective(const FractionalProgram& fp, std::span<const double> p) {
    if (p.size() != static_cast<std::size_t>(fp.n_vars))
        throw DimensionMismatch("policy vector length does not match the program");
    double total = 0.0;
    for (int j = 0; j < fp.n_ratios; ++j) total += fp.numerator(j, p) / fp.denominator(j, p);
    return total;
}

EpBounds ep_bounds(const FractionalProgram& fp, const SystemConfig& config) {
    for (double coeff : fp.g)
        if (coeff < 0.0)
            throw MonotonicityViolated("a numerator coefficient is negative");
    for (double coeff : fp.f)
        if (coeff < 0.0)
            throw MonotonicityViolated("a denominator coefficient is negative");

    const std::vector<double> zeros(static_cast<std::size_t>(fp.n_vars), 0.0);
    const std::vector<double> ones(static_cast<std::size_t>(fp.n_vars), 1.0);

    EpBounds bounds;
    bounds.num_min.resize(static_cast<std::size_t>(fp.n_ratios));
    bounds.num_max.resize(static_cast<std::size_t>(fp.n_ratios));
    bounds.den_min.resize(static_cast<std::size_t>(fp.n_ratios));
    bounds.den_max.resize(static_cast<std::size_t>(fp.n_ratios));

    const double mu = config.service_rate;
    const double lc = config.channel_rate();
    const double num_max_identity = (mu + lc) * (mu + lc) * (mu + lc);

    for (int j = 0; j < fp.n_ratios; ++j) {
        bounds.num_min[j] = fp.numerator(j, zeros);
        bounds.num_max[j] = fp.numerator(j, ones);
        bounds.den_min[j] = fp.denominator(j, zeros);
        bounds.den_max[j] = fp.denominator(j, ones);

        const double informative = config.informative_rate(j);
        const double den_min_identity = mu * mu * (mu + lc) * informative;
        const double den_max_identity = mu * (mu + lc) * (mu + lc) * informative;
        auto close = [](double a, double b) {
            return std::fabs(a - b) <= 1e-9 * std::fmax(std::fabs(a), std::fabs(b));
        };
        if (!close(bounds.num_max[j], num_max_identity) ||
            !close(bounds.den_min[j], den_min_identity) ||
            !close(bounds.den_max[j], den_max_identity))
            throw Error("endpoint bounds disagree with their closed forms for ratio " +
                        std::to_string(j));
    }
    return bounds;
}

double lipschitz_bound(const FractionalProgram& fp) {
    const std::vector<double> zeros(static_cast<std::size_t>(fp.n_vars), 0.0);
    const std::vector<double> ones(static_cast<std::size_t>(fp.n_vars), 1.0);

    double sum_sq = 0.0;
    for (int i = 0; i < fp.n_vars; ++i) {
        double partial = 0.0;
        for (int j = 0; j < fp.n_ratios; ++j) {
            const double den_lo = fp.denominator(j, zeros);
            const double num_hi = fp.numerator(j, ones);
            const double gj = fp.g[static_cast<std::size_t>(j) * fp.n_vars + i];
            const double fj = fp.f[static_cast<std::size_t>(j) * fp.n_vars + i];
            partial += gj / den_lo + num_hi * fj / (den_lo * den_lo);
        }
        sum_sq += partial * partial;
    }
    return std::sqrt(sum_sq);
}

} // namespace aoi
