#pragma once

#include <vector>

namespace aoi::linalg {

/// Solves the square system A x = b, A given row-major. Uses LU with
/// partial pivoting plus one step of iterative refinement.
std::vector<double> lu_solve(const std::vector<double>& a, const std::vector<double>& b);

} // namespace aoi::linalg
