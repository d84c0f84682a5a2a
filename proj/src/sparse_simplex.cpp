#include "skirent/sparse_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include "skirent/model.hpp"

namespace skirent {

namespace {

constexpr double kCostTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kEtaDropTol = 1e-14;
constexpr double kPhase1Tol = 1e-7;
constexpr double kDegenerateStep = 1e-12;
constexpr std::size_t kRefactorFast = 30;      // cadence with the cheap factorization
constexpr std::size_t kRefactorFallback = 100; // cadence on the generic-LU fallback
constexpr double kGpPivotTol = 1e-11;
constexpr std::size_t kBlandAfter = 60;  // degenerate steps before Bland kicks in

// Stored dense: pivot columns here are nearly full (each pivot touches the
// whole downstream prefix-sum chain), so contiguous axpy/dot beats an
// index-value list.
struct Eta {
    int row;
    double diag;            // w[row]
    Eigen::VectorXd off;    // w with the pivot slot zeroed
};

// Basis factorization: left-looking sparse LU (Gilbert-Peierls) with
// partial pivoting.  Column order comes from a structure-only two-sided
// singleton cascade — the bases here are dominated by two running-sum
// chains and are nearly triangular in that order, so fill stays close to
// the input nonzero count and refactorization is cheap enough to keep the
// eta file short.  A generic sparse LU remains as a numerical fallback.
class Basis {
public:
    Basis(const Eigen::SparseMatrix<double>& A, std::vector<int> cols)
        : A_(A), cols_(std::move(cols)) {
        refactorize();
    }

    const std::vector<int>& columns() const { return cols_; }

    void refactorize() {
        etas_.clear();
        if (!gp_factorize()) fallback_factorize();
    }

    std::size_t eta_count() const { return etas_.size(); }
    bool fast() const { return fast_; }

    // Solve B x = v in place: v enters indexed by row, leaves indexed by
    // basis position.
    void ftran(Eigen::VectorXd& v) const {
        if (fast_) {
            const int m = static_cast<int>(cols_.size());
            // Forward: y = L^{-1} P v; y_s accumulates at v[prow_[s]].
            for (int s = 0; s < m; ++s) {
                double ys = v[prow_[s]];
                if (ys != 0.0) {
                    for (const auto& [r, lv] : lcols_[s]) v[r] -= lv * ys;
                }
            }
            for (int s = 0; s < m; ++s) ystep_[s] = v[prow_[s]];
            // Backward: U x = y, U stored by column over pivot steps.
            for (int s = m - 1; s >= 0; --s) {
                double xs = ystep_[s] / upiv_[s];
                ystep_[s] = xs;
                if (xs != 0.0) {
                    for (const auto& [k, uv] : ucols_[s]) ystep_[k] -= uv * xs;
                }
            }
            for (int s = 0; s < m; ++s) v[pcol_[s]] = ystep_[s];
        } else {
            v = lu_.solve(v);
        }
        for (const Eta& e : etas_) {
            double xr = v[e.row] / e.diag;
            if (xr != 0.0) v.noalias() -= xr * e.off;
            v[e.row] = xr;
        }
    }

    // Solve y^T B = c^T in place: c enters indexed by basis position,
    // leaves indexed by row.
    void btran(Eigen::VectorXd& c) const {
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            c[it->row] = (c[it->row] - it->off.dot(c)) / it->diag;
        }
        if (fast_) {
            const int m = static_cast<int>(cols_.size());
            // Forward: U^T z = c (permuted); gather from earlier steps.
            for (int s = 0; s < m; ++s) {
                double acc = c[pcol_[s]];
                for (const auto& [k, uv] : ucols_[s]) acc -= uv * ystep_[k];
                ystep_[s] = acc / upiv_[s];
            }
            // Backward: L^T y = z; y lands indexed by row.
            for (int s = m - 1; s >= 0; --s) {
                double acc = ystep_[s];
                for (const auto& [r, lv] : lcols_[s]) acc -= lv * c[r];
                c[prow_[s]] = acc;
            }
        } else {
            c = lu_.adjoint().solve(c);
        }
    }

    // Replace the basic variable of `row` by column `col`, where w = B^{-1} A_col.
    void update(int row, int col, const Eigen::VectorXd& w) {
        Eta e;
        e.row = row;
        e.diag = w[row];
        e.off = w;
        e.off[row] = 0.0;
        for (int i = 0; i < e.off.size(); ++i) {
            if (std::abs(e.off[i]) <= kEtaDropTol) e.off[i] = 0.0;
        }
        etas_.push_back(std::move(e));
        cols_[row] = col;
    }

private:
    // Structure-only cascade: repeatedly peel singleton rows/columns; stall
    // leftovers are appended in position order (the chains eliminate like a
    // band).  Writes the column order into order_; always succeeds.
    void cascade_order() {
        const int m = static_cast<int>(cols_.size());
        order_.clear();
        order_.reserve(m);
        std::vector<int> row_cnt(m, 0), col_cnt(m, 0);
        std::vector<char> row_live(m, 1), col_live(m, 1);
        for (int c = 0; c < m; ++c) {
            col_cnt[c] = static_cast<int>(col_entries_[c].size());
            for (const auto& [r, val] : col_entries_[c]) ++row_cnt[r];
        }
        std::vector<int> stack;
        stack.reserve(2 * m);
        for (int i = 0; i < m; ++i) {
            if (row_cnt[i] == 1) stack.push_back(i);
            if (col_cnt[i] == 1) stack.push_back(i + m);
        }
        while (!stack.empty()) {
            int code = stack.back();
            stack.pop_back();
            if (code < m) {
                int r = code;
                if (!row_live[r] || row_cnt[r] != 1) continue;
                int c = -1;
                for (const auto& [cc, val] : row_entries_[r]) {
                    if (col_live[cc]) c = cc;
                }
                if (c < 0) continue;
                order_.push_back(c);
                row_live[r] = 0;
                col_live[c] = 0;
                for (const auto& [rr, val] : col_entries_[c]) {
                    if (row_live[rr] && --row_cnt[rr] == 1) stack.push_back(rr);
                }
            } else {
                int c = code - m;
                if (!col_live[c] || col_cnt[c] != 1) continue;
                int r = -1;
                for (const auto& [rr, val] : col_entries_[c]) {
                    if (row_live[rr]) r = rr;
                }
                if (r < 0) continue;
                order_.push_back(c);
                row_live[r] = 0;
                col_live[c] = 0;
                for (const auto& [cc, val] : row_entries_[r]) {
                    if (col_live[cc] && --col_cnt[cc] == 1) stack.push_back(cc + m);
                }
            }
        }
        // Stall leftovers: the unordered block is banded in the original row
        // numbering, so eliminate in min-row order; near-dense columns go
        // last so their fill stays confined to the tail.
        std::vector<std::tuple<int, int, int>> rest;
        for (int c = 0; c < m; ++c) {
            if (!col_live[c]) continue;
            int min_row = m;
            int degree = 0;
            for (const auto& [r, val] : col_entries_[c]) {
                if (row_live[r]) {
                    ++degree;
                    min_row = std::min(min_row, r);
                }
            }
            rest.emplace_back(degree > 16 ? 1 : 0, min_row, c);
        }
        std::sort(rest.begin(), rest.end());
        for (const auto& [dense_tier, min_row, c] : rest) order_.push_back(c);
    }

    bool gp_factorize() {
        const int m = static_cast<int>(cols_.size());
        fast_ = false;
        col_entries_.assign(m, {});
        row_entries_.assign(m, {});
        for (int c = 0; c < m; ++c) {
            for (Eigen::SparseMatrix<double>::InnerIterator it(A_, cols_[c]); it; ++it) {
                int r = static_cast<int>(it.row());
                col_entries_[c].emplace_back(r, it.value());
                row_entries_[r].emplace_back(c, it.value());
            }
        }
        cascade_order();

        lcols_.assign(m, {});
        ucols_.assign(m, {});
        upiv_.assign(m, 0.0);
        prow_.assign(m, -1);
        pcol_.assign(m, -1);
        ystep_.resize(m);
        std::vector<int> pinv(m, -1);  // row -> pivot step, -1 if unpivoted
        if (static_cast<int>(xwork_.size()) != m) {
            xwork_.assign(m, 0.0);
            mark_.assign(m, -1);
        }
        std::vector<int> topo, dfs, pos;
        topo.reserve(64);

        // The cascade order keeps fill near nnz(B) when the basis is chain
        // dominated; if the leftover block is genuinely hard (e.g. wide mass
        // rows), fill can explode — give up early and use the generic LU.
        std::size_t nnz_b = 0;
        for (const auto& ce : col_entries_) nnz_b += ce.size();
        const std::size_t fill_budget = std::max<std::size_t>(200000, 8 * nnz_b);
        std::size_t fill = 0;

        for (int s = 0; s < m; ++s) {
            const int j = order_[s];
            const int stamp = ++stamp_;
            // Symbolic: rows reachable from A(:,j) through finished L columns,
            // in topological order (standard Gilbert-Peierls DFS).
            topo.clear();
            for (const auto& [r0, val] : col_entries_[j]) {
                if (mark_[r0] == stamp) continue;
                dfs.assign(1, r0);
                pos.assign(1, 0);
                mark_[r0] = stamp;
                while (!dfs.empty()) {
                    int r = dfs.back();
                    int k = pinv[r];
                    bool descended = false;
                    if (k >= 0) {
                        auto& lc = lcols_[k];
                        for (int& p = pos.back(); p < static_cast<int>(lc.size());) {
                            int child = lc[p++].first;
                            if (mark_[child] != stamp) {
                                mark_[child] = stamp;
                                dfs.push_back(child);
                                pos.push_back(0);
                                descended = true;
                                break;
                            }
                        }
                    }
                    if (!descended) {
                        topo.push_back(r);
                        dfs.pop_back();
                        pos.pop_back();
                    }
                }
            }
            // Numeric: x = L^{-1} A(:,j) over the reach set.
            for (const auto& [r, val] : col_entries_[j]) xwork_[r] = val;
            for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
                int r = *it;
                int k = pinv[r];
                if (k < 0) continue;
                double xk = xwork_[r];
                if (xk != 0.0) {
                    for (const auto& [rr, lv] : lcols_[k]) xwork_[rr] -= lv * xk;
                }
            }
            // Partial pivoting over unpivoted rows.
            int prow = -1;
            double pmax = 0.0;
            for (int r : topo) {
                if (pinv[r] < 0 && std::abs(xwork_[r]) > pmax) {
                    pmax = std::abs(xwork_[r]);
                    prow = r;
                }
            }
            if (prow < 0 || pmax < kGpPivotTol) {
                for (int r : topo) xwork_[r] = 0.0;
                return false;
            }
            double pval = xwork_[prow];
            for (int r : topo) {
                double xr = xwork_[r];
                xwork_[r] = 0.0;
                if (xr == 0.0) continue;
                if (pinv[r] >= 0) {
                    ucols_[s].emplace_back(pinv[r], xr);
                } else if (r != prow) {
                    double mult = xr / pval;
                    if (std::abs(mult) > kEtaDropTol) lcols_[s].emplace_back(r, mult);
                }
            }
            upiv_[s] = pval;
            prow_[s] = prow;
            pcol_[s] = j;
            pinv[prow] = s;
            fill += lcols_[s].size() + ucols_[s].size();
            if (fill > fill_budget) return false;
        }
        fast_ = true;
        return true;
    }

    void fallback_factorize() {
        const int m = static_cast<int>(cols_.size());
        Eigen::SparseMatrix<double> B(m, m);
        std::vector<Eigen::Triplet<double>> trip;
        for (int r = 0; r < m; ++r) {
            for (Eigen::SparseMatrix<double>::InnerIterator it(A_, cols_[r]); it; ++it) {
                trip.emplace_back(static_cast<int>(it.row()), r, it.value());
            }
        }
        B.setFromTriplets(trip.begin(), trip.end());
        lu_.compute(B);
        if (lu_.info() != Eigen::Success) {
            throw SolverError("sparse_simplex: singular basis at refactorization");
        }
    }

    const Eigen::SparseMatrix<double>& A_;
    std::vector<int> cols_;
    bool fast_ = false;
    std::vector<int> order_, prow_, pcol_;
    std::vector<double> upiv_;
    std::vector<std::vector<std::pair<int, double>>> lcols_;  // by step: (row, multiplier)
    std::vector<std::vector<std::pair<int, double>>> ucols_;  // by step: (earlier step, value)
    std::vector<std::vector<std::pair<int, double>>> col_entries_, row_entries_;
    std::vector<double> xwork_;
    std::vector<int> mark_;
    int stamp_ = 0;
    mutable std::vector<double> ystep_;
    // adjoint() is non-const in Eigen's SparseLU even though it only reads
    mutable Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
    std::vector<Eta> etas_;
};

double column_dot(const Eigen::SparseMatrix<double>& A, int j, const Eigen::VectorXd& y) {
    double s = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, j); it; ++it) {
        s += it.value() * y[it.row()];
    }
    return s;
}

}  // namespace

SparseSimplexResult sparse_simplex(const SparseSimplexProblem& problem,
                                   std::size_t max_iterations) {
    const int m = static_cast<int>(problem.A.rows());
    const int n = static_cast<int>(problem.A.cols());
    if (static_cast<int>(problem.initial_basis.size()) != m ||
        static_cast<int>(problem.is_artificial.size()) != n || problem.b.size() != m ||
        problem.c.size() != n) {
        throw std::invalid_argument("sparse_simplex: inconsistent dimensions");
    }
    Eigen::SparseMatrix<double> A = problem.A;
    A.makeCompressed();

    bool has_artificial = false;
    for (char f : problem.is_artificial) has_artificial |= (f != 0);

    Basis basis(A, problem.initial_basis);
    std::vector<char> in_basis(n, 0);
    for (int c : basis.columns()) in_basis[c] = 1;

    Eigen::VectorXd xb = problem.b;
    basis.ftran(xb);
    for (int i = 0; i < m; ++i) {
        if (xb[i] < -1e-7 && !problem.is_artificial[basis.columns()[i]]) {
            throw SolverError("sparse_simplex: starting basis is infeasible on a non-artificial variable");
        }
    }

    SparseSimplexResult out;
    Eigen::VectorXd cost(n);

    auto run_phase = [&](bool phase1) -> LpStatus {
        if (phase1) {
            cost.setZero();
            for (int j = 0; j < n; ++j) {
                if (problem.is_artificial[j]) cost[j] = 1.0;
            }
        } else {
            cost = problem.c;
        }

        std::size_t degenerate_streak = 0;
        Eigen::VectorXd y(m), w(m);
        while (out.iterations < max_iterations) {
            // Pricing: y = B^{-T} c_B, reduced cost d_j = c_j - y . A_j.
            for (int i = 0; i < m; ++i) y[i] = cost[basis.columns()[i]];
            basis.btran(y);

            const bool bland = degenerate_streak >= kBlandAfter;
            int enter = -1;
            double best = -kCostTol;
            for (int j = 0; j < n; ++j) {
                if (in_basis[j]) continue;
                if (!phase1 && problem.is_artificial[j]) continue;
                double d = cost[j] - column_dot(A, j, y);
                if (d < best) {
                    enter = j;
                    if (bland) break;  // first eligible index
                    best = d;
                }
            }
            if (enter < 0) return LpStatus::Optimal;

            for (int i = 0; i < m; ++i) w[i] = 0.0;
            for (Eigen::SparseMatrix<double>::InnerIterator it(A, enter); it; ++it) {
                w[it.row()] = it.value();
            }
            basis.ftran(w);

            int leave = -1;
            double theta = 0.0;
            for (int i = 0; i < m; ++i) {
                if (w[i] > kPivotTol) {
                    double cap = std::max(xb[i], 0.0) / w[i];
                    if (leave < 0 || cap < theta - 1e-12 ||
                        (cap < theta + 1e-12 &&
                         (bland ? basis.columns()[i] < basis.columns()[leave]
                                : std::abs(w[i]) > std::abs(w[leave])))) {
                        leave = i;
                        theta = cap;
                    }
                }
            }
            if (leave < 0) return LpStatus::Unbounded;

            for (int i = 0; i < m; ++i) xb[i] -= theta * w[i];
            xb[leave] = theta;
            in_basis[basis.columns()[leave]] = 0;
            in_basis[enter] = 1;
            basis.update(leave, enter, w);
            ++out.iterations;
            degenerate_streak = (theta <= kDegenerateStep) ? degenerate_streak + 1 : 0;

            if (basis.eta_count() >= (basis.fast() ? kRefactorFast : kRefactorFallback)) {
                basis.refactorize();
                ++out.refactorizations;
                xb = problem.b;
                basis.ftran(xb);
            }
        }
        return LpStatus::IterationLimit;
    };

    if (has_artificial) {
        LpStatus st = run_phase(true);
        if (st != LpStatus::Optimal) {
            out.status = st == LpStatus::Unbounded ? LpStatus::Infeasible : st;
            return out;
        }
        double art_sum = 0.0;
        for (int i = 0; i < m; ++i) {
            if (problem.is_artificial[basis.columns()[i]]) art_sum += std::max(xb[i], 0.0);
        }
        if (art_sum > kPhase1Tol) {
            out.status = LpStatus::Infeasible;
            return out;
        }
        // Pivot basic-at-zero artificials out where a non-artificial column
        // crosses the row; a row with no such column is redundant.
        for (int i = 0; i < m; ++i) {
            if (!problem.is_artificial[basis.columns()[i]]) continue;
            Eigen::VectorXd rho = Eigen::VectorXd::Zero(m);
            rho[i] = 1.0;
            basis.btran(rho);
            for (int j = 0; j < n; ++j) {
                if (in_basis[j] || problem.is_artificial[j]) continue;
                if (std::abs(column_dot(A, j, rho)) > 1e-7) {
                    Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
                    for (Eigen::SparseMatrix<double>::InnerIterator it(A, j); it; ++it) {
                        w[it.row()] = it.value();
                    }
                    basis.ftran(w);
                    in_basis[basis.columns()[i]] = 0;
                    in_basis[j] = 1;
                    basis.update(i, j, w);
                    xb = problem.b;
                    basis.ftran(xb);
                    break;
                }
            }
        }
    }

    out.status = run_phase(false);
    if (out.status != LpStatus::Optimal) return out;

    out.x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i) {
        out.x[basis.columns()[i]] = std::max(xb[i], 0.0);
    }
    out.objective = problem.c.dot(out.x);
    return out;
}

}  // namespace skirent
