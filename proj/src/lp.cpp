#include "skirent/lp.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "skirent/badinterval.hpp"
#include "skirent/greedy.hpp"
#include "skirent/sparse_simplex.hpp"

namespace skirent {

namespace {

constexpr std::size_t kDenseCutoff = 200;  // time variables; above this the sparse path runs

// Visit every row of the displayed formulation in emission order.  The
// callback receives a label, the dense coefficient span over
// [f_1..f_K, f_inf, lambda], a relation, and the rhs.
template <typename Fn>
void for_each_row(const ProblemConfig& cfg, const TimeGrid& grid, Fn&& fn) {
    const double a = cfg.a;
    const std::size_t K = grid.count;
    const std::size_t k1 = grid.floor_index(1.0, edge_tol(grid.tau));
    const std::size_t vinf = K;
    const std::size_t vlam = K + 1;
    std::vector<double> row(K + 2);

    auto label = [](const char* stem, std::size_t k) {
        std::ostringstream os;
        os << stem << "_" << std::setw(4) << std::setfill('0') << k;
        return os.str();
    };

    // Ratio rows, x <= 1 form.
    for (std::size_t k = 1; k <= k1; ++k) {
        const double x = grid.time_of(k);
        for (std::size_t j = 1; j <= K; ++j) {
            double t = grid.time_of(j);
            row[j - 1] = j <= k ? ((1.0 - a) * (1.0 + t) + a * x) / x : 1.0;
        }
        row[vinf] = 1.0;
        row[vlam] = -1.0;
        fn(label("cr_le", k), row, Relation::LE, 0.0);
    }
    // Ratio rows, x >= 1 form; x = 1 appears in both ranges on purpose.
    for (std::size_t k = k1; k <= K; ++k) {
        const double x = grid.time_of(k);
        const double d = 1.0 - a + a * x;
        for (std::size_t j = 1; j <= K; ++j) {
            double t = grid.time_of(j);
            row[j - 1] = j <= k ? ((1.0 - a) * (1.0 + t) + a * x) / d : x / d;
        }
        row[vinf] = x / d;
        row[vlam] = -1.0;
        fn(label("cr_ge", k), row, Relation::LE, 0.0);
    }
    // Ratio row at infinity.
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t j = 0; j < K; ++j) row[j] = 1.0;
    row[vinf] = 1.0 / a;
    row[vlam] = -1.0;
    fn(std::string("cr_inf"), row, Relation::LE, 0.0);

    // Mass rows; with delta >= 1 they are implied by the total-mass row.
    if (cfg.delta < 1.0) {
        const double tol = edge_tol(grid.tau);
        for (std::size_t k = 1; k <= K; ++k) {
            BadInterval iv = bad_interval(grid.time_of(k), a, cfg.gamma);
            if (iv.kind != BadInterval::Kind::Bounded) continue;  // empty below L_b
            std::size_t lo = grid.floor_index(iv.left, tol);
            std::size_t hi = grid.floor_index(iv.right, tol);
            if (lo >= hi) continue;
            std::fill(row.begin(), row.end(), 0.0);
            for (std::size_t j = lo + 1; j <= hi; ++j) row[j - 1] = 1.0;
            fn(label("mass", k), row, Relation::LE, cfg.delta);
        }
    }
    // Mass bound at infinity (the bad interval of any x >= l5 is a suffix
    // whose finite part lies beyond the support).
    std::fill(row.begin(), row.end(), 0.0);
    row[vinf] = 1.0;
    fn(std::string("inf_cap"), row, Relation::LE, cfg.delta);

    // Total mass.
    std::fill(row.begin(), row.end(), 1.0);
    row[vlam] = 0.0;
    fn(std::string("total"), row, Relation::EQ, 1.0);
}

TimeGrid lp_grid(const ProblemConfig& cfg) {
    RegimeBoundaries rb = cfg.bounds();
    TimeGrid g;
    g.tau = cfg.tau;
    g.count = static_cast<std::size_t>(std::floor(rb.lb / cfg.tau + 1e-9));
    if (g.count == 0) throw ConfigError("build_lp: grid does not reach the first point");
    if (cfg.delta < 1.0 && !aligned(rb.lb, cfg.tau)) {
        throw ConfigError("build_lp: L_b is not on the grid");
    }
    return g;
}

}  // namespace

LPInstance::LPInstance(const ProblemConfig& config)
    : config_(config), grid_(lp_grid(config)) {}

LPInstance build_lp(const ProblemConfig& config) { return LPInstance(config); }

DenseLp LPInstance::dense(std::size_t max_time_vars) const {
    const std::size_t K = grid_.count;
    if (K > max_time_vars) {
        throw SolverError("LPInstance::dense: instance too large for the dense form");
    }
    DenseLp lp;
    lp.num_vars = K + 2;
    lp.objective.assign(K + 2, 0.0);
    lp.objective[K + 1] = 1.0;  // minimize lambda
    for_each_row(config_, grid_, [&](const std::string&, const std::vector<double>& row,
                                     Relation rel, double rhs) {
        lp.rows.push_back(row);
        lp.relations.push_back(rel);
        lp.rhs.push_back(rhs);
    });
    return lp;
}

std::vector<std::string> LPInstance::row_labels() const {
    std::vector<std::string> labels;
    for_each_row(config_, grid_, [&](const std::string& label, const std::vector<double>&,
                                     Relation, double) { labels.push_back(label); });
    return labels;
}

namespace {

SolveResult finish_solution(const LPInstance& inst, std::vector<double> f_masses,
                            double f_inf, double lambda, std::size_t iterations) {
    SolveResult res;
    res.f = make_distribution(inst.grid());
    res.f.masses = std::move(f_masses);
    res.f.mass_inf = f_inf;
    // Clean tiny simplex residue and renormalize exactly.
    double total = res.f.mass_inf;
    for (double& m : res.f.masses) {
        if (m < 0.0 && m > -1e-9) m = 0.0;
        total += m;
    }
    if (std::abs(total - 1.0) > 1e-7) {
        throw SolverError("solve_lp: optimal distribution does not sum to 1");
    }
    res.f.mass_inf += 1.0 - total;
    res.opt = lambda;
    res.iterations = iterations;
    res.world = world_check(res.f, lambda, inst.config());
    return res;
}

}  // namespace

SolveResult solve_lp_dense(const LPInstance& inst) {
    DenseLp lp = inst.dense();
    // Normalize each row by its largest coefficient for conditioning.
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        double mx = 0.0;
        for (double v : lp.rows[i]) mx = std::max(mx, std::abs(v));
        if (mx > 0.0) {
            for (double& v : lp.rows[i]) v /= mx;
            lp.rhs[i] /= mx;
        }
    }
    DenseLpResult r = dense_simplex(lp);
    if (r.status != LpStatus::Optimal) {
        throw SolverError(r.status == LpStatus::Infeasible
                              ? "solve_lp: infeasible"
                              : (r.status == LpStatus::Unbounded ? "solve_lp: unbounded"
                                                                 : "solve_lp: iteration limit"));
    }
    const std::size_t K = inst.num_time_vars();
    std::vector<double> masses(r.x.begin(), r.x.begin() + K);
    return finish_solution(inst, std::move(masses), r.x[K], r.x[K + 1], r.iterations);
}

SolveResult solve_lp_sparse(const LPInstance& inst) {
    const ProblemConfig& cfg = inst.config();
    const TimeGrid& grid = inst.grid();
    const double a = cfg.a;
    const std::size_t K = grid.count;
    const std::size_t k1 = grid.floor_index(1.0, edge_tol(grid.tau));

    // Columns: S0_k, S1_k, f_k (k = 1..K), f_inf, lambda, then one slack per
    // inequality row, then one artificial for the f_inf cap.
    const int cS0 = 0, cS1 = static_cast<int>(K), cF = static_cast<int>(2 * K);
    const int cInf = static_cast<int>(3 * K), cLam = cInf + 1;

    struct RowSpec {
        std::vector<std::pair<int, double>> coeffs;
        Relation rel;
        double rhs;
        int basic;  // initial basic column; -1 means "this row's slack"
    };
    std::vector<RowSpec> rows;
    rows.reserve(5 * K + 4);

    for (std::size_t k = 1; k <= K; ++k) {
        const double t = grid.time_of(k);
        RowSpec s0def{{{cS0 + int(k) - 1, 1.0}, {cF + int(k) - 1, -1.0}}, Relation::EQ, 0.0,
                      cS0 + int(k) - 1};
        if (k > 1) s0def.coeffs.push_back({cS0 + int(k) - 2, -1.0});
        rows.push_back(std::move(s0def));
        RowSpec s1def{{{cS1 + int(k) - 1, 1.0}, {cF + int(k) - 1, -t}}, Relation::EQ, 0.0,
                      cS1 + int(k) - 1};
        if (k > 1) s1def.coeffs.push_back({cS1 + int(k) - 2, -1.0});
        rows.push_back(std::move(s1def));
    }
    // Ratio rows in prefix-sum form: (1-a)(1-x)S0 + (1-a)S1 - D(x) lambda <= -x,
    // with D(x) = x below 1 and 1-a+ax above (x = 1 emitted in both forms).
    for (std::size_t k = 1; k <= k1; ++k) {
        const double x = grid.time_of(k);
        rows.push_back({{{cS0 + int(k) - 1, (1.0 - a) * (1.0 - x)},
                         {cS1 + int(k) - 1, 1.0 - a},
                         {cLam, -x}},
                        Relation::LE, -x, -1});
    }
    for (std::size_t k = k1; k <= K; ++k) {
        const double x = grid.time_of(k);
        rows.push_back({{{cS0 + int(k) - 1, (1.0 - a) * (1.0 - x)},
                         {cS1 + int(k) - 1, 1.0 - a},
                         {cLam, -(1.0 - a + a * x)}},
                        Relation::LE, -x, -1});
    }
    // Ratio row at infinity: (1/a - 1) f_inf - lambda <= -1; lambda starts
    // basic here at 1/a.
    rows.push_back({{{cInf, 1.0 / a - 1.0}, {cLam, -1.0}}, Relation::LE, -1.0, cLam});

    if (cfg.delta < 1.0) {
        const double tol = edge_tol(grid.tau);
        for (std::size_t k = 1; k <= K; ++k) {
            BadInterval iv = bad_interval(grid.time_of(k), a, cfg.gamma);
            if (iv.kind != BadInterval::Kind::Bounded) continue;
            std::size_t lo = grid.floor_index(iv.left, tol);
            std::size_t hi = grid.floor_index(iv.right, tol);
            if (lo >= hi) continue;
            RowSpec mrow{{{cS0 + int(hi) - 1, 1.0}}, Relation::LE, cfg.delta, -1};
            if (lo >= 1) mrow.coeffs.push_back({cS0 + int(lo) - 1, -1.0});
            rows.push_back(std::move(mrow));
        }
    }
    // The starting point (everything at infinity, lambda = 1/a) violates only
    // the f_inf cap, and only when delta < 1; that row gets the one artificial.
    const bool need_artificial = cfg.delta < 1.0;
    const int cap_row = static_cast<int>(rows.size());
    rows.push_back({{{cInf, 1.0}}, Relation::LE, cfg.delta, -1});
    rows.push_back({{{cS0 + int(K) - 1, 1.0}, {cInf, 1.0}}, Relation::EQ, 1.0, cInf});

    const int m = static_cast<int>(rows.size());
    int num_slacks = 0;
    for (const RowSpec& r : rows) {
        if (r.rel == Relation::LE) ++num_slacks;
    }
    const int n = cLam + 1 + num_slacks + (need_artificial ? 1 : 0);
    const int art_col = need_artificial ? n - 1 : -1;

    SparseSimplexProblem sp;
    sp.b.resize(m);
    sp.c = Eigen::VectorXd::Zero(n);
    sp.c[cLam] = 1.0;
    sp.is_artificial.assign(n, 0);
    if (need_artificial) sp.is_artificial[art_col] = 1;
    sp.initial_basis.assign(m, -1);

    std::vector<Eigen::Triplet<double>> trip;
    int slack = cLam + 1;
    for (int i = 0; i < m; ++i) {
        for (const auto& [j, v] : rows[i].coeffs) trip.emplace_back(i, j, v);
        sp.b[i] = rows[i].rhs;
        int basic = rows[i].basic;
        if (rows[i].rel == Relation::LE) {
            trip.emplace_back(i, slack, 1.0);
            if (basic == -1) basic = slack;
            ++slack;
        }
        if (i == cap_row && need_artificial) {
            trip.emplace_back(i, art_col, -1.0);
            basic = art_col;
        }
        sp.initial_basis[i] = basic;
    }
    sp.A.resize(m, n);
    sp.A.setFromTriplets(trip.begin(), trip.end());

    SparseSimplexResult r = sparse_simplex(sp);
    if (r.status != LpStatus::Optimal) {
        throw SolverError(r.status == LpStatus::Infeasible
                              ? "solve_lp: infeasible"
                              : (r.status == LpStatus::Unbounded ? "solve_lp: unbounded"
                                                                 : "solve_lp: iteration limit"));
    }
    std::vector<double> masses(K);
    for (std::size_t k = 0; k < K; ++k) masses[k] = r.x[cF + static_cast<int>(k)];
    return finish_solution(inst, std::move(masses), r.x[cInf], r.x[cLam], r.iterations);
}

SolveResult solve_lp(const LPInstance& instance) {
    return instance.num_time_vars() <= kDenseCutoff ? solve_lp_dense(instance)
                                                    : solve_lp_sparse(instance);
}

std::string to_lp_format(const LPInstance& inst) {
    const std::size_t K = inst.num_time_vars();
    auto var_name = [K](std::size_t j) {
        if (j < K) {
            std::ostringstream os;
            os << "f_" << std::setw(4) << std::setfill('0') << (j + 1);
            return os.str();
        }
        return std::string(j == K ? "f_inf" : "lambda");
    };

    std::ostringstream os;
    os << std::setprecision(17);
    os << "Minimize\n obj: lambda\nSubject To\n";
    for_each_row(inst.config(), inst.grid(), [&](const std::string& label,
                                                 const std::vector<double>& row, Relation rel,
                                                 double rhs) {
        os << " " << label << ":";
        bool first = true;
        for (std::size_t j = 0; j < row.size(); ++j) {
            double v = row[j];
            if (v == 0.0) continue;
            if (first) {
                os << " " << v;
                first = false;
            } else {
                os << (v >= 0.0 ? " + " : " - ") << std::abs(v);
            }
            os << " " << var_name(j);
        }
        os << (rel == Relation::LE ? " <= " : (rel == Relation::GE ? " >= " : " = ")) << rhs
           << "\n";
    });
    os << "Bounds\n";
    for (std::size_t j = 0; j < K + 2; ++j) os << " " << var_name(j) << " >= 0\n";
    os << "End\n";
    return os.str();
}

}  // namespace skirent
