#pragma once

#include <vector>

#include "aoi/fractional.hpp"

namespace aoi {

struct BnbOptions {
    long max_iterations = 200000;     // hard cap; exceeding it reports certified=false
    bool accelerate = false;          // interval-tightening pass on popped nodes
    bool polish = true;               // coordinate refinement of the final incumbent
    bool record_lower_bounds = false; // keep the per-iteration global bound trace
};

struct BnbResult {
    std::vector<double> p_star;
    double objective = 0.0;
    double lower_bound = 0.0;
    double gap = 0.0;
    long iterations = 0;
    long nodes_explored = 0;
    bool certified = false;
    std::vector<double> lower_bound_trace;  // per iteration, when recorded
};

/// Global minimization of the ratio sum over [0,1]^N to an absolute gap
/// of epsilon0, branching on the denominator intervals. Node bounds come
/// from an LP relaxation whose bilinear terms are replaced by their
/// convex/concave envelopes over the node rectangle.
BnbResult branch_and_bound(const FractionalProgram& fp, double epsilon0, const BnbOptions& options = {});

struct GridResult {
    std::vector<double> p_best;
    double objective = 0.0;
};

/// Exhaustive evaluation on the uniform grid over the box; verification
/// oracle for the branch-and-bound path.
GridResult grid_oracle(const SystemConfig& config, double resolution, long long budget = 20'000'000);

/// Worst-case iteration count for the certified search at the given gap.
long long iteration_upper_bound(const SystemConfig& config, double epsilon0);

} // namespace aoi
