#include "aoi/linalg.hpp"

#include <cmath>
#include <cstddef>
#include <numeric>
#include <utility>

#include "aoi/errors.hpp"

namespace aoi::linalg {

namespace {

struct LuFactors {
    std::vector<double> lu;  // packed L\U
    std::vector<int> perm;
    int n = 0;
};

LuFactors factorize(std::vector<double> a, int n) {
    LuFactors f{std::move(a), std::vector<int>(static_cast<std::size_t>(n)), n};
    std::iota(f.perm.begin(), f.perm.end(), 0);
    auto at = [&](int r, int c) -> double& { return f.lu[static_cast<std::size_t>(r) * n + c]; };

    for (int k = 0; k < n; ++k) {
        int pivot = k;
        double best = std::fabs(at(k, k));
        for (int r = k + 1; r < n; ++r) {
            const double mag = std::fabs(at(r, k));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best == 0.0) throw SingularSystem("matrix is singular to working precision");
        if (pivot != k) {
            for (int c = 0; c < n; ++c) std::swap(at(k, c), at(pivot, c));
            std::swap(f.perm[k], f.perm[pivot]);
        }
        const double inv = 1.0 / at(k, k);
        for (int r = k + 1; r < n; ++r) {
            const double factor = at(r, k) * inv;
            at(r, k) = factor;
            for (int c = k + 1; c < n; ++c) at(r, c) -= factor * at(k, c);
        }
    }
    return f;
}

std::vector<double> back_substitute(const LuFactors& f, const std::vector<double>& b) {
    const int n = f.n;
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) x[r] = b[f.perm[r]];
    auto at = [&](int r, int c) { return f.lu[static_cast<std::size_t>(r) * n + c]; };
    for (int r = 1; r < n; ++r)
        for (int c = 0; c < r; ++c) x[r] -= at(r, c) * x[c];
    for (int r = n - 1; r >= 0; --r) {
        for (int c = r + 1; c < n; ++c) x[r] -= at(r, c) * x[c];
        x[r] /= at(r, r);
    }
    return x;
}

} // namespace

std::vector<double> lu_solve(const std::vector<double>& a, const std::vector<double>& b) {
    const int n = static_cast<int>(b.size());
    if (a.size() != b.size() * b.size()) throw DimensionMismatch("lu_solve: matrix is not n x n");

    const LuFactors factors = factorize(a, n);
    std::vector<double> x = back_substitute(factors, b);

    // One refinement step against the original matrix.
    std::vector<double> residual(b);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            residual[r] -= a[static_cast<std::size_t>(r) * n + c] * x[c];
    const std::vector<double> correction = back_substitute(factors, residual);
    for (int r = 0; r < n; ++r) x[r] += correction[r];
    return x;
}

} // namespace aoi::linalg
