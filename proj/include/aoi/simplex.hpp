#pragma once

#include <vector>

namespace aoi::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
    Status status = Status::Infeasible;
    double objective = 0.0;
    std::vector<double> x;
};

/// Small dense LP: min c.x subject to linear rows and finite box bounds.
struct Problem {
    enum class Relation { LessEqual, Equal };

    struct Row {
        std::vector<double> coeffs;
        Relation relation = Relation::LessEqual;
        double rhs = 0.0;
    };

    std::vector<double> objective;
    std::vector<double> lower, upper;
    std::vector<Row> rows;

    int n_vars() const { return static_cast<int>(objective.size()); }
};

Solution solve(const Problem& problem);

} // namespace aoi::lp
