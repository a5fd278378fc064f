#include "aoi/simplex.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "aoi/errors.hpp"

namespace aoi::lp {

namespace {

constexpr double kEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Two-phase tableau simplex for max c.x s.t. A x <= b, x >= 0.
// Pivot selection breaks ties on variable index, which prevents cycling.
class Tableau {
public:
    Tableau(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
            const std::vector<double>& c)
        : m_(static_cast<int>(b.size())),
          n_(static_cast<int>(c.size())),
          nonbasic_(n_ + 1),
          basic_(m_),
          d_(m_ + 2, std::vector<double>(n_ + 2, 0.0)) {
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < n_; ++j) d_[i][j] = a[i][j];
        for (int i = 0; i < m_; ++i) {
            basic_[i] = n_ + i;
            d_[i][n_] = -1.0;
            d_[i][n_ + 1] = b[i];
        }
        for (int j = 0; j < n_; ++j) {
            nonbasic_[j] = j;
            d_[m_][j] = -c[j];
        }
        nonbasic_[n_] = -1;
        d_[m_ + 1][n_] = 1.0;
    }

    // Returns the optimum, -inf if infeasible, +inf if unbounded.
    double solve(std::vector<double>& x) {
        int r = 0;
        for (int i = 1; i < m_; ++i)
            if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
        if (d_[r][n_ + 1] < -kEps) {
            pivot(r, n_);
            if (!run(2) || d_[m_ + 1][n_ + 1] < -kEps) return -kInf;
            for (int i = 0; i < m_; ++i) {
                if (basic_[i] != -1) continue;
                int s = 0;
                for (int j = 1; j <= n_; ++j)
                    if (s == -1 || std::pair(d_[i][j], nonbasic_[j]) < std::pair(d_[i][s], nonbasic_[s]))
                        s = j;
                pivot(i, s);
            }
        }
        const bool bounded = run(1);
        x.assign(n_, 0.0);
        for (int i = 0; i < m_; ++i)
            if (basic_[i] < n_) x[basic_[i]] = d_[i][n_ + 1];
        return bounded ? d_[m_][n_ + 1] : kInf;
    }

private:
    void pivot(int r, int s) {
        std::vector<double>& row = d_[r];
        const double inv = 1.0 / row[s];
        for (int i = 0; i < m_ + 2; ++i) {
            if (i == r || std::fabs(d_[i][s]) <= kEps) continue;
            const double factor = d_[i][s] * inv;
            for (int j = 0; j < n_ + 2; ++j) d_[i][j] -= row[j] * factor;
            d_[i][s] = row[s] * factor;
        }
        for (int j = 0; j < n_ + 2; ++j)
            if (j != s) d_[r][j] *= inv;
        for (int i = 0; i < m_ + 2; ++i)
            if (i != r) d_[i][s] *= -inv;
        d_[r][s] = inv;
        std::swap(basic_[r], nonbasic_[s]);
    }

    bool run(int phase) {
        const int objective_row = m_ + phase - 1;
        for (;;) {
            int s = -1;
            for (int j = 0; j < n_ + 1; ++j) {
                if (nonbasic_[j] == -phase) continue;
                if (s == -1 || std::pair(d_[objective_row][j], nonbasic_[j]) <
                                   std::pair(d_[objective_row][s], nonbasic_[s]))
                    s = j;
            }
            if (d_[objective_row][s] >= -kEps) return true;
            int r = -1;
            for (int i = 0; i < m_; ++i) {
                if (d_[i][s] <= kEps) continue;
                if (r == -1 || std::pair(d_[i][n_ + 1] / d_[i][s], basic_[i]) <
                                   std::pair(d_[r][n_ + 1] / d_[r][s], basic_[r]))
                    r = i;
            }
            if (r == -1) return false;
            pivot(r, s);
        }
    }

    int m_, n_;
    std::vector<int> nonbasic_, basic_;
    std::vector<std::vector<double>> d_;
};

} // namespace

Solution solve(const Problem& problem) {
    const int n = problem.n_vars();
    if (problem.lower.size() != static_cast<std::size_t>(n) ||
        problem.upper.size() != static_cast<std::size_t>(n))
        throw Error("lp: bound vectors do not match the variable count");
    for (int i = 0; i < n; ++i)
        if (!(problem.lower[i] <= problem.upper[i]) || !std::isfinite(problem.lower[i]) ||
            !std::isfinite(problem.upper[i]))
            throw Error("lp: bounds must be finite with lower <= upper");

    // Shift to y = x - lower >= 0; upper bounds become explicit rows.
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (int i = 0; i < n; ++i) {
        const double width = problem.upper[i] - problem.lower[i];
        std::vector<double> row(n, 0.0);
        row[i] = 1.0;
        a.push_back(std::move(row));
        b.push_back(width);
    }
    for (const Problem::Row& row : problem.rows) {
        if (row.coeffs.size() != static_cast<std::size_t>(n))
            throw Error("lp: row length does not match the variable count");
        double shifted = row.rhs;
        double scale = 1.0;
        for (int i = 0; i < n; ++i) {
            shifted -= row.coeffs[i] * problem.lower[i];
            scale = std::fmax(scale, std::fabs(row.coeffs[i]));
        }
        std::vector<double> coeffs(n);
        for (int i = 0; i < n; ++i) coeffs[i] = row.coeffs[i] / scale;
        const double rhs = shifted / scale;

        a.push_back(coeffs);
        b.push_back(rhs);
        if (row.relation == Problem::Relation::Equal) {
            for (double& v : coeffs) v = -v;
            a.push_back(std::move(coeffs));
            b.push_back(-rhs);
        }
    }

    std::vector<double> c(n);
    for (int i = 0; i < n; ++i) c[i] = -problem.objective[i];  // max(-c.y) = -min(c.y)

    std::vector<double> y;
    const double value = Tableau(a, b, c).solve(y);

    Solution solution;
    if (value == -kInf) {
        solution.status = Status::Infeasible;
        return solution;
    }
    if (value == kInf) {
        solution.status = Status::Unbounded;
        return solution;
    }
    solution.status = Status::Optimal;
    solution.x.resize(n);
    solution.objective = 0.0;
    for (int i = 0; i < n; ++i) {
        solution.x[i] = y[i] + problem.lower[i];
        solution.objective += problem.objective[i] * solution.x[i];
    }
    return solution;
}

} // namespace aoi::lp
