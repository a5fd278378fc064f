#include "aoi/bnb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "aoi/simplex.hpp"

namespace aoi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Node {
    std::vector<double> lo, hi;  // denominator intervals, one per ratio
    double lb = -kInf;
    long id = 0;
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.lb != b.lb) return a.lb > b.lb;  // min-heap on the bound
        return a.id > b.id;                    // then oldest first
    }
};

void snap_to_box(std::vector<double>& p) {
    for (double& v : p) {
        v = std::clamp(v, 0.0, 1.0);
        if (v < 1e-9) v = 0.0;
        if (v > 1.0 - 1e-9) v = 1.0;
    }
}

// Variables sorted by numerator-per-denominator cost, one order per ratio;
// used to bound each numerator over a node's denominator slab.
struct RatioOrders {
    std::vector<std::vector<int>> cheap_first;      // ascending g_i / f_i, f_i > 0 only
    std::vector<std::vector<int>> expensive_first;  // descending, f_i == 0 entries first
};

RatioOrders make_ratio_orders(const FractionalProgram& fp) {
    RatioOrders orders;
    orders.cheap_first.resize(static_cast<std::size_t>(fp.n_ratios));
    orders.expensive_first.resize(static_cast<std::size_t>(fp.n_ratios));
    for (int j = 0; j < fp.n_ratios; ++j) {
        const double* g_row = fp.g.data() + static_cast<std::size_t>(j) * fp.n_vars;
        const double* f_row = fp.f.data() + static_cast<std::size_t>(j) * fp.n_vars;
        std::vector<int>& cheap = orders.cheap_first[j];
        std::vector<int>& expensive = orders.expensive_first[j];
        for (int i = 0; i < fp.n_vars; ++i) {
            if (f_row[i] > 0.0) cheap.push_back(i);
            expensive.push_back(i);
        }
        auto ratio = [&](int i) {
            return f_row[i] > 0.0 ? g_row[i] / f_row[i] : kInf;
        };
        std::sort(cheap.begin(), cheap.end(), [&](int a, int b) { return ratio(a) < ratio(b); });
        std::sort(expensive.begin(), expensive.end(),
                  [&](int a, int b) { return ratio(a) > ratio(b); });
    }
    return orders;
}

// Range of one numerator over { p in the box : denominator in [lo, hi] },
// by the exact continuous-knapsack greedy. Both directions drop the
// non-binding side of the slab, so the range is valid and nested under
// node splits.
std::pair<double, double> numerator_range(const FractionalProgram& fp, const RatioOrders& orders,
                                          int j, double lo, double hi) {
    const double* g_row = fp.g.data() + static_cast<std::size_t>(j) * fp.n_vars;
    const double* f_row = fp.f.data() + static_cast<std::size_t>(j) * fp.n_vars;

    double need = lo - fp.f0[j];  // denominator budget that must be spent
    double low = fp.g0[j];
    for (int i : orders.cheap_first[j]) {
        if (need <= 0.0) break;
        const double x = std::fmin(1.0, need / f_row[i]);
        low += x * g_row[i];
        need -= x * f_row[i];
    }

    double budget = hi - fp.f0[j];  // denominator budget that may be spent
    double high = fp.g0[j];
    for (int i : orders.expensive_first[j]) {
        if (f_row[i] <= 0.0) {
            high += g_row[i];  // free numerator mass
            continue;
        }
        if (budget <= 0.0) break;
        const double x = std::fmin(1.0, budget / f_row[i]);
        high += x * g_row[i];
        budget -= x * f_row[i];
    }
    // Widen against greedy rounding so the range stays an enclosure.
    return {low * (1.0 - 1e-12), high * (1.0 + 1e-12)};
}

// LP relaxation over one node. Variables are (p, alpha_hat, t): alpha_hat
// is the denominator scaled by its root maximum, t_j relaxes the ratio
// value via the four envelope cuts for t_j * alpha_j = G_j(p).
struct Relaxation {
    double lower_bound = kInf;  // +inf marks an infeasible node
    std::vector<double> p;
};

Relaxation relax_node(const FractionalProgram& fp, const EpBounds& bounds,
                      const RatioOrders& orders, const Node& node) {
    const int n = fp.n_vars;
    const int m = fp.n_ratios;

    lp::Problem problem;
    problem.objective.assign(static_cast<std::size_t>(n + 2 * m), 0.0);
    problem.lower.assign(static_cast<std::size_t>(n + 2 * m), 0.0);
    problem.upper.assign(static_cast<std::size_t>(n + 2 * m), 0.0);

    for (int i = 0; i < n; ++i) {
        problem.lower[i] = 0.0;
        problem.upper[i] = 1.0;
    }
    const auto alpha_var = [&](int j) { return n + j; };
    const auto t_var = [&](int j) { return n + m + j; };

    std::vector<double> num_lo(static_cast<std::size_t>(m)), num_hi(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        const auto [lo, hi] = numerator_range(fp, orders, j, node.lo[j], node.hi[j]);
        num_lo[j] = std::fmax(lo, bounds.num_min[j]);
        num_hi[j] = std::fmin(hi, bounds.num_max[j]);
        const double scale = bounds.den_max[j];
        problem.lower[alpha_var(j)] = node.lo[j] / scale;
        problem.upper[alpha_var(j)] = node.hi[j] / scale;
        problem.lower[t_var(j)] = num_lo[j] / node.hi[j];
        problem.upper[t_var(j)] = num_hi[j] / node.lo[j];
        problem.objective[t_var(j)] = 1.0;
    }

    for (int j = 0; j < m; ++j) {
        const double scale = bounds.den_max[j];
        const double* g_row = fp.g.data() + static_cast<std::size_t>(j) * n;
        const double* f_row = fp.f.data() + static_cast<std::size_t>(j) * n;
        const double g0 = fp.g0[j] / scale;
        const double al = node.lo[j] / scale;
        const double au = node.hi[j] / scale;
        const double tl = num_lo[j] / node.hi[j];
        const double tu = num_hi[j] / node.lo[j];

        lp::Problem::Row link;  // alpha_hat_j = F_j(p) / scale
        link.coeffs.assign(static_cast<std::size_t>(n + 2 * m), 0.0);
        link.coeffs[alpha_var(j)] = 1.0;
        for (int i = 0; i < n; ++i) link.coeffs[i] = -f_row[i] / scale;
        link.relation = lp::Problem::Relation::Equal;
        link.rhs = fp.f0[j] / scale;
        problem.rows.push_back(std::move(link));

        // t*alpha >= envelope underestimates of G(p), and <= overestimates.
        const auto add_cut = [&](double t_bound, double a_bound, double sign) {
            lp::Problem::Row row;
            row.coeffs.assign(static_cast<std::size_t>(n + 2 * m), 0.0);
            row.coeffs[alpha_var(j)] = sign * t_bound;
            row.coeffs[t_var(j)] = sign * a_bound;
            for (int i = 0; i < n; ++i) row.coeffs[i] = -sign * g_row[i] / scale;
            row.rhs = sign * (g0 + t_bound * a_bound);
            problem.rows.push_back(std::move(row));
        };
        add_cut(tl, al, 1.0);   // G >= tl*a + al*t - tl*al
        add_cut(tu, au, 1.0);   // G >= tu*a + au*t - tu*au
        add_cut(tu, al, -1.0);  // G <= tu*a + al*t - tu*al
        add_cut(tl, au, -1.0);  // G <= tl*a + au*t - tl*au
    }

    const lp::Solution solution = lp::solve(problem);
    Relaxation result;
    if (solution.status == lp::Status::Infeasible) return result;
    if (solution.status == lp::Status::Unbounded)
        throw Error("node relaxation is unbounded; the envelope construction is broken");

    result.lower_bound = solution.objective - 1e-9 * (1.0 + std::fabs(solution.objective));
    result.p.assign(solution.x.begin(), solution.x.begin() + n);
    snap_to_box(result.p);
    return result;
}

// Deterministic per-coordinate refinement of an incumbent point.
double polish_point(const FractionalProgram& fp, std::vector<double>& p) {
    double best = eval_objective(fp, p);
    for (int pass = 0; pass < 3; ++pass) {
        for (int i = 0; i < fp.n_vars; ++i) {
            double arg = p[i];
            // Coarse scan, then window halving around the best sample.
            constexpr int kScan = 64;
            for (int k = 0; k <= kScan; ++k) {
                p[i] = double(k) / kScan;
                const double value = eval_objective(fp, p);
                if (value < best) {
                    best = value;
                    arg = p[i];
                }
            }
            double h = 1.0 / kScan;
            for (int step = 0; step < 45; ++step) {
                h *= 0.5;
                for (const double candidate : {arg - h, arg + h}) {
                    if (candidate < 0.0 || candidate > 1.0) continue;
                    p[i] = candidate;
                    const double value = eval_objective(fp, p);
                    if (value < best) {
                        best = value;
                        arg = candidate;
                    }
                }
            }
            p[i] = arg;
        }
    }
    snap_to_box(p);
    best = eval_objective(fp, p);
    return best;
}

} // namespace

BnbResult branch_and_bound(const FractionalProgram& fp, double epsilon0, const BnbOptions& options) {
    if (!(epsilon0 > 0.0 && epsilon0 < 1.0)) throw Error("epsilon0 must lie in (0,1)");
    if (fp.n_vars <= 0 || fp.n_ratios <= 0) throw Error("empty fractional program");

    const int n = fp.n_vars;
    const int m = fp.n_ratios;

    // Endpoint ranges of each denominator over the box.
    EpBounds bounds;
    {
        const std::vector<double> zeros(static_cast<std::size_t>(n), 0.0);
        const std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
        bounds.num_min.resize(static_cast<std::size_t>(m));
        bounds.num_max.resize(static_cast<std::size_t>(m));
        bounds.den_min.resize(static_cast<std::size_t>(m));
        bounds.den_max.resize(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) {
            bounds.num_min[j] = fp.numerator(j, zeros);
            bounds.num_max[j] = fp.numerator(j, ones);
            bounds.den_min[j] = fp.denominator(j, zeros);
            bounds.den_max[j] = fp.denominator(j, ones);
            if (!(bounds.den_min[j] > 0.0))
                throw Error("denominator is not positive over the box");
        }
    }

    const RatioOrders orders = make_ratio_orders(fp);

    BnbResult result;
    result.p_star.assign(static_cast<std::size_t>(n), 1.0);

    // Seed the incumbent with both box corners.
    std::vector<double> corner(static_cast<std::size_t>(n), 1.0);
    result.objective = eval_objective(fp, corner);
    std::fill(corner.begin(), corner.end(), 0.0);
    if (const double at_zero = eval_objective(fp, corner); at_zero < result.objective) {
        result.objective = at_zero;
        result.p_star = corner;
    }

    Node root{bounds.den_min, bounds.den_max, -kInf, 0};
    const std::vector<double> root_width = [&] {
        std::vector<double> width(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) width[j] = bounds.den_max[j] - bounds.den_min[j];
        return width;
    }();

    Relaxation root_relax = relax_node(fp, bounds, orders, root);
    ++result.nodes_explored;
    if (root_relax.lower_bound == kInf) throw InfeasibleBox("root relaxation is infeasible");
    if (const double value = eval_objective(fp, root_relax.p); value < result.objective) {
        result.objective = value;
        result.p_star = root_relax.p;
    }
    root.lb = root_relax.lower_bound;

    std::priority_queue<Node, std::vector<Node>, NodeOrder> queue;
    queue.push(std::move(root));
    long next_id = 1;
    double fathomed_min = kInf;
    double reported_lb = -kInf;

    const auto current_lb = [&]() {
        double lb = queue.empty() ? kInf : queue.top().lb;
        lb = std::min(lb, fathomed_min);
        return std::min(lb, result.objective);
    };

    while (!queue.empty()) {
        reported_lb = std::max(reported_lb, current_lb());
        if (options.record_lower_bounds) result.lower_bound_trace.push_back(reported_lb);
        if (result.objective - reported_lb <= epsilon0) break;
        if (result.iterations >= options.max_iterations) break;
        ++result.iterations;

        Node node = queue.top();
        queue.pop();

        if (options.accelerate) {
            // Delete slices of the node that cannot beat the incumbent.
            bool empty = false;
            for (int j = 0; j < m && !empty; ++j) {
                double others = 0.0;
                for (int k = 0; k < m; ++k)
                    if (k != j) others += bounds.num_min[k] / node.hi[k];
                const double cap = result.objective - others;
                if (cap <= 0.0) {
                    empty = true;
                    break;
                }
                node.lo[j] = std::max(node.lo[j], bounds.num_min[j] / cap);
                if (node.lo[j] > node.hi[j]) empty = true;
            }
            if (empty) {
                fathomed_min = std::min(fathomed_min, node.lb);
                continue;
            }
        }

        // Bisect the relatively longest denominator interval.
        int split = 0;
        double longest = -1.0;
        for (int j = 0; j < m; ++j) {
            const double rel = (node.hi[j] - node.lo[j]) / root_width[j];
            if (rel > longest) {
                longest = rel;
                split = j;
            }
        }
        const double mid = 0.5 * (node.lo[split] + node.hi[split]);

        for (int side = 0; side < 2; ++side) {
            Node child;
            child.lo = node.lo;
            child.hi = node.hi;
            (side == 0 ? child.hi : child.lo)[split] = mid;
            child.id = next_id++;

            Relaxation relax = relax_node(fp, bounds, orders, child);
            ++result.nodes_explored;
            if (relax.lower_bound == kInf) continue;  // no policy maps into this rectangle
            child.lb = std::max(relax.lower_bound, node.lb);

            if (const double value = eval_objective(fp, relax.p); value < result.objective) {
                result.objective = value;
                result.p_star = relax.p;
            }
            if (child.lb >= result.objective - epsilon0) {
                fathomed_min = std::min(fathomed_min, child.lb);
                continue;
            }
            queue.push(std::move(child));
        }
    }

    reported_lb = std::max(reported_lb, current_lb());
    if (options.record_lower_bounds) result.lower_bound_trace.push_back(reported_lb);

    if (options.polish) {
        std::vector<double> refined = result.p_star;
        const double value = polish_point(fp, refined);
        if (value < result.objective) {
            result.objective = value;
            result.p_star = std::move(refined);
        }
    }

    result.lower_bound = std::min(reported_lb, result.objective);
    result.gap = result.objective - result.lower_bound;
    result.certified = result.gap <= epsilon0;
    return result;
}

GridResult grid_oracle(const SystemConfig& config, double resolution, long long budget) {
    if (!(resolution > 0.0 && resolution <= 0.5)) throw Error("resolution must lie in (0, 0.5]");
    validate_config(config);
    const FractionalProgram fp = build_fractional_program(config);

    // Multiples of the resolution plus the far corner. Halving the
    // resolution then yields an exact superset of these points.
    std::vector<double> values;
    for (long long k = 0;; ++k) {
        const double v = double(k) * resolution;
        if (v >= 1.0) break;
        values.push_back(v);
    }
    values.push_back(1.0);

    double total = 1.0;
    for (int i = 0; i < fp.n_vars; ++i) total *= double(values.size());
    if (total > double(budget))
        throw BudgetExceeded("grid of " + std::to_string(total) + " points exceeds the budget");

    const long long top = static_cast<long long>(values.size()) - 1;
    std::vector<long long> index(static_cast<std::size_t>(fp.n_vars), 0);
    std::vector<double> p(static_cast<std::size_t>(fp.n_vars), 0.0);

    GridResult best;
    best.objective = kInf;
    for (;;) {
        for (int i = 0; i < fp.n_vars; ++i) p[i] = values[index[i]];
        const double value = eval_objective(fp, p);
        if (value < best.objective) {
            best.objective = value;
            best.p_best = p;
        }
        int dim = 0;
        while (dim < fp.n_vars && ++index[dim] > top) {
            index[dim] = 0;
            ++dim;
        }
        if (dim == fp.n_vars) break;
    }
    return best;
}

long long iteration_upper_bound(const SystemConfig& config, double epsilon0) {
    validate_config(config);  // coverage keeps the minimum informative rate positive
    if (!(epsilon0 > 0.0 && epsilon0 < 1.0)) throw Error("epsilon0 must lie in (0,1)");

    const double mu = config.service_rate;
    const double lc = config.channel_rate();
    double min_informative = kInf;
    for (int j = 0; j < config.n_processes; ++j)
        min_informative = std::min(min_informative, config.informative_rate(j));

    const double m = double(config.n_processes);
    const double argument = 4.0 * m * (mu + lc) * (mu + lc) * lc * lc /
                            (epsilon0 * mu * mu * mu * min_informative * min_informative);
    return config.n_processes * static_cast<long long>(std::ceil(std::log2(argument)));
}

} // namespace aoi
