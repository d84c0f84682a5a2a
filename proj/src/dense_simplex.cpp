#include "skirent/dense_simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace skirent {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kCostTol = 1e-9;
constexpr double kPhase1Tol = 1e-7;

struct Tableau {
    std::size_t m, ncols;             // ncols includes the rhs column
    std::vector<double> a;            // row-major, m x ncols
    std::vector<double> cost;         // length ncols: reduced costs, rhs slot = -objective
    std::vector<std::size_t> basis;   // basic variable of each row

    double& at(std::size_t i, std::size_t j) { return a[i * ncols + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * ncols + j]; }

    void pivot(std::size_t r, std::size_t c) {
        double p = at(r, c);
        for (std::size_t j = 0; j < ncols; ++j) at(r, j) /= p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r) continue;
            double f = at(i, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < ncols; ++j) at(i, j) -= f * at(r, j);
        }
        double f = cost[c];
        if (f != 0.0) {
            for (std::size_t j = 0; j < ncols; ++j) cost[j] -= f * at(r, j);
        }
        basis[r] = c;
    }
};

// Dantzig pricing with a largest-pivot ratio tie-break; Bland's rule kicks
// in after a run of degenerate pivots to guarantee termination.
LpStatus run_phase(Tableau& t, const std::vector<bool>& allowed, std::size_t max_iters,
                   std::size_t& iters) {
    const std::size_t rhs = t.ncols - 1;
    std::size_t degenerate_streak = 0;
    while (iters < max_iters) {
        const bool bland = degenerate_streak >= 50;
        std::size_t enter = rhs;
        double best_cost = -kCostTol;
        for (std::size_t j = 0; j < rhs; ++j) {
            if (allowed[j] && t.cost[j] < best_cost) {
                enter = j;
                if (bland) break;
                best_cost = t.cost[j];
            }
        }
        if (enter == rhs) return LpStatus::Optimal;

        // Two-pass ratio test: find the minimum ratio, then take the row
        // with the largest pivot among near-minimal ratios.
        double theta = -1.0;
        for (std::size_t i = 0; i < t.m; ++i) {
            double aij = t.at(i, enter);
            if (aij > kPivotTol) {
                double ratio = std::max(t.at(i, rhs), 0.0) / aij;
                if (theta < 0.0 || ratio < theta) theta = ratio;
            }
        }
        if (theta < 0.0) return LpStatus::Unbounded;
        std::size_t leave = t.m;
        for (std::size_t i = 0; i < t.m; ++i) {
            double aij = t.at(i, enter);
            if (aij > kPivotTol) {
                double ratio = std::max(t.at(i, rhs), 0.0) / aij;
                if (ratio <= theta * (1.0 + 1e-9) + 1e-12) {
                    if (leave == t.m ||
                        (bland ? t.basis[i] < t.basis[leave]
                               : aij > t.at(leave, enter))) {
                        leave = i;
                    }
                }
            }
        }
        t.pivot(leave, enter);
        ++iters;
        degenerate_streak = theta <= 1e-12 ? degenerate_streak + 1 : 0;
    }
    return LpStatus::IterationLimit;
}

}  // namespace

DenseLpResult dense_simplex(const DenseLp& lp, std::size_t max_iterations) {
    const std::size_t n = lp.num_vars;
    const std::size_t m = lp.rows.size();
    if (lp.objective.size() != n || lp.relations.size() != m || lp.rhs.size() != m) {
        throw std::invalid_argument("dense_simplex: inconsistent dimensions");
    }

    // Column layout: [structural | slacks/surpluses | artificials | rhs].
    std::size_t num_slack = 0, num_art = 0;
    std::vector<double> sign(m, 1.0);
    std::vector<Relation> rel(lp.relations);
    for (std::size_t i = 0; i < m; ++i) {
        if (lp.rhs[i] < 0.0) {
            sign[i] = -1.0;
            if (rel[i] == Relation::LE) rel[i] = Relation::GE;
            else if (rel[i] == Relation::GE) rel[i] = Relation::LE;
        }
        if (rel[i] != Relation::EQ) ++num_slack;
        if (rel[i] != Relation::LE) ++num_art;
    }

    Tableau t;
    t.m = m;
    t.ncols = n + num_slack + num_art + 1;
    t.a.assign(m * t.ncols, 0.0);
    t.cost.assign(t.ncols, 0.0);
    t.basis.assign(m, 0);
    const std::size_t rhs_col = t.ncols - 1;
    const std::size_t slack0 = n;
    const std::size_t art0 = n + num_slack;

    std::size_t si = 0, ai = 0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t.at(i, j) = sign[i] * lp.rows[i][j];
        t.at(i, rhs_col) = sign[i] * lp.rhs[i];
        if (rel[i] == Relation::LE) {
            t.at(i, slack0 + si) = 1.0;
            t.basis[i] = slack0 + si++;
        } else {
            if (rel[i] == Relation::GE) t.at(i, slack0 + si++) = -1.0;
            t.at(i, art0 + ai) = 1.0;
            t.basis[i] = art0 + ai++;
        }
    }

    DenseLpResult out;

    // Phase 1: minimize the sum of artificials.
    if (num_art > 0) {
        for (std::size_t j = art0; j < rhs_col; ++j) t.cost[j] = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (t.basis[i] >= art0) {
                for (std::size_t j = 0; j < t.ncols; ++j) t.cost[j] -= t.at(i, j);
            }
        }
        // Artificials start basic and never need to re-enter.
        std::vector<bool> allowed(t.ncols, true);
        for (std::size_t j = art0; j < rhs_col; ++j) allowed[j] = false;
        LpStatus st = run_phase(t, allowed, max_iterations, out.iterations);
        if (st != LpStatus::Optimal) {
            out.status = st;
            return out;
        }
        if (-t.cost[rhs_col] > kPhase1Tol) {
            out.status = LpStatus::Infeasible;
            return out;
        }
        // Pivot any artificial still basic (at zero) out on a structural column.
        for (std::size_t i = 0; i < m; ++i) {
            if (t.basis[i] >= art0) {
                for (std::size_t j = 0; j < art0; ++j) {
                    if (std::abs(t.at(i, j)) > kPivotTol) {
                        t.pivot(i, j);
                        break;
                    }
                }
            }
        }
    }

    // Phase 2: original objective, artificials barred from entering.
    std::fill(t.cost.begin(), t.cost.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) t.cost[j] = lp.objective[j];
    for (std::size_t i = 0; i < m; ++i) {
        double f = t.cost[t.basis[i]];
        if (f != 0.0) {
            for (std::size_t j = 0; j < t.ncols; ++j) t.cost[j] -= f * t.at(i, j);
        }
    }
    std::vector<bool> allowed(t.ncols, true);
    for (std::size_t j = art0; j < rhs_col; ++j) allowed[j] = false;
    out.status = run_phase(t, allowed, max_iterations, out.iterations);
    if (out.status != LpStatus::Optimal) return out;

    out.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (t.basis[i] < n) out.x[t.basis[i]] = t.at(i, rhs_col);
    }
    out.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) out.objective += lp.objective[j] * out.x[j];
    return out;
}

}  // namespace skirent
