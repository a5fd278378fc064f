#pragma once

#include <span>
#include <vector>

#include "aoi/model.hpp"

namespace aoi {

/// Sum-of-linear-ratios form of the total age:
///   sum_j (g_j . p + g0_j) / (f_j . p + f0_j)  over p in [0,1]^N.
/// Numerators and denominators are both increasing in every coordinate.
struct FractionalProgram {
    int n_vars = 0;    // sensors
    int n_ratios = 0;  // processes
    std::vector<double> g0, f0;  // per ratio
    std::vector<double> g, f;    // row-major n_ratios x n_vars
    double service_rate = 0.0;
    double channel_rate = 0.0;

    double numerator(int ratio, std::span<const double> p) const;
    double denominator(int ratio, std::span<const double> p) const;
};

FractionalProgram build_fractional_program(const SystemConfig& config);

double eval_objective(const FractionalProgram& fp, std::span<const double> p);

/// Ranges of each ratio's numerator and denominator over the box,
/// obtained by endpoint evaluation.
struct EpBounds {
    std::vector<double> num_min, num_max, den_min, den_max;  // per ratio
};

EpBounds ep_bounds(const FractionalProgram& fp, const SystemConfig& config);

/// Bound on the Euclidean norm of the objective gradient over the box.
double lipschitz_bound(const FractionalProgram& fp);

} // namespace aoi
