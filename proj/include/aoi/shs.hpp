#pragma once

#include <array>

#include "aoi/analysis.hpp"
#include "aoi/model.hpp"

namespace aoi {

/// Numerical solution of the three-state server chain and the age
/// correlation vector it induces for one process. Built and solved as
/// dense linear systems, independent of the closed-form route.
struct ShsSolution {
    StationaryDistribution pi;
    std::array<double, 6> v_bar{};  // (v00, v01, v10, v11, v20, v21)
    double aoi = 0.0;
};

ShsSolution shs_oracle_aoi(const SystemConfig& config, const PreemptionPolicy& policy, int process);

/// Average age expressed directly in the aggregated rates; an
/// independent algebraic form of the same quantity.
double aoi_rate_form(const RateSummary& rates, double service_rate, int process);

} // namespace aoi
