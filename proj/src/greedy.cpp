#include "skirent/greedy.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "skirent/badinterval.hpp"

namespace skirent {

namespace {

constexpr double kZeroTol = 1e-13;   // "the tight amount is zero" threshold
constexpr double kFullMass = 1.0 - 1e-12;

// Mass keeping the guessed ratio tight at x <= 1, given running sums
// over t < x:  x(T-1)/(1-a) - sum_{t<x}(1+t-x) f_t.
double cr_tight_leq1(double x, double T, double a, double s0, double s1) {
    return x * (T - 1.0) / (1.0 - a) - ((1.0 - x) * s0 + s1);
}

// Mass keeping the guessed ratio tight at x >= 1:
// ((1-a+ax)T - x)/(1-a) - sum_{t<x}(1+t-x) f_t.
double cr_tight_geq1(double x, double T, double a, double s0, double s1) {
    return ((1.0 - a + a * x) * T - x) / (1.0 - a) - ((1.0 - x) * s0 + s1);
}

struct GreedyState {
    const ProblemConfig& cfg;
    RegimeBoundaries rb;
    TimeGrid grid;
    std::vector<double> cum;  // cum[k] = mass on indices 1..k
    std::size_t k1, k_l3, k_i3, k_l5, k_lb;

    explicit GreedyState(const ProblemConfig& config)
        : cfg(config), rb(config.bounds()) {
        grid.tau = config.tau;
        grid.count = static_cast<std::size_t>(std::round(config.x_max / config.tau));
        cum.assign(grid.count + 1, 0.0);
        const double tol = edge_tol(config.tau);
        k1 = grid.floor_index(1.0, tol);
        k_l3 = grid.floor_index(rb.l3, tol);
        k_i3 = grid.floor_index(rb.i3, tol);
        k_l5 = grid.floor_index(rb.l5, tol);
        k_lb = grid.floor_index(rb.lb, tol);
    }

    // delta minus the mass already inside I_gamma(x) \ {x}.
    double interval_budget(double x, std::size_t k) const {
        BadInterval iv = bad_interval(x, cfg.a, cfg.gamma);
        // An empty bad interval means no mass constraint binds at x at all.
        if (iv.kind == BadInterval::Kind::Empty) {
            return std::numeric_limits<double>::infinity();
        }
        std::size_t lo = std::min(grid.floor_index(iv.left, edge_tol(cfg.tau)), k - 1);
        return cfg.delta - (cum[k - 1] - cum[lo]);
    }

    // delta minus the mass placed on [lb+tau, x-tau].
    double suffix_budget(std::size_t k) const { return cfg.delta - (cum[k - 1] - cum[k_lb]); }
};

}  // namespace

double f_one_plus_tau(double s0, double s1, double a, double tau) {
    return tau * (s0 - 1.0 + a * s1);
}

PartialDistribution alg_subroutine(const ProblemConfig& config, double T) {
    GreedyState st(config);
    PartialDistribution out;
    out.f = make_distribution(st.grid);

    double s0 = 0.0, s1 = 0.0;  // running sums over t < x
    auto place = [&](std::size_t k, double m) {
        if (m < 0.0) {
            ++out.clamp_warnings;
            m = 0.0;
        }
        out.f.masses[k - 1] = m;
        st.cum[k] = st.cum[k - 1] + m;
        s0 += m;
        s1 += st.grid.time_of(k) * m;
    };

    place(1, std::min(config.delta, (T - 1.0) * config.tau / (1.0 - config.a)));

    const double a = config.a;
    for (std::size_t k = 2; k <= st.grid.count; ++k) {
        if (s0 >= kFullMass) {
            out.termination = Termination::MassReachedOne;
            out.f.masses.resize(k - 1);
            out.f.grid.count = k - 1;
            return out;
        }
        const double x = st.grid.time_of(k);
        double m;
        if (k <= st.k_l3) {
            m = std::min(st.interval_budget(x, k), cr_tight_leq1(x, T, a, s0, s1));
        } else if (k <= st.k1) {
            m = cr_tight_leq1(x, T, a, s0, s1);
        } else if (k == st.k1 + 1) {
            m = cr_tight_geq1(x, T, a, s0, s1);
            // "Zero mass keeps the ratio tight at 1+tau" up to the resolution
            // the support cap can distinguish: the mass here grows by 1+tau
            // per step, so unless the continuation could reach total mass 1
            // before x_max, this pass is a world-1 pass.
            double reach = 2.0 * config.tau * std::max(0.0, 1.0 - s0) *
                           std::exp(-(config.x_max - x));
            if (m <= std::max(kZeroTol, reach)) {
                out.f.mass_inf = a * (T - s0);
                out.termination = Termination::WorldOneExit;
                out.f.masses.resize(k - 1);
                out.f.grid.count = k - 1;
                return out;
            }
        } else if (k <= st.k_i3) {
            m = cr_tight_geq1(x, T, a, s0, s1);
        } else if (k <= st.k_l5) {
            m = std::min(st.interval_budget(x, k), cr_tight_geq1(x, T, a, s0, s1));
        } else {
            double budget = st.suffix_budget(k);
            m = std::min(budget, cr_tight_geq1(x, T, a, s0, s1));
            if (budget <= kZeroTol) {
                out.termination = Termination::SuffixBudgetExhausted;
                out.f.masses.resize(k - 1);
                out.f.grid.count = k - 1;
                return out;
            }
        }
        if (m < -1e-9) {
            // Mass at later times only raises the ratio at x further, so a
            // genuinely negative tight amount means T is below the optimum.
            out.termination = Termination::RatioInfeasible;
            out.f.masses.resize(k - 1);
            out.f.grid.count = k - 1;
            return out;
        }
        place(k, m);
    }

    std::ostringstream os;
    os << "alg_subroutine: support cap x_max=" << config.x_max << " hit at T=" << T
       << " with total mass " << s0;
    throw SolverError(os.str());
}

World world_check(const PurchaseDistribution& prefix, double opt, const ProblemConfig& config) {
    const double a = config.a;
    const double tau = config.tau;
    PrefixSums ps(prefix);
    std::size_t k1 = prefix.grid.floor_index(1.0, edge_tol(tau));
    double s0 = ps.s0(k1);
    double s1 = ps.s1(k1);

    // Ratio at 1+tau when zero mass is added there.
    const double d = 1.0 - a + a * (1.0 + tau);
    double check = (1.0 + tau) / d;
    // sum over t <= 1 of (1-a)(t-tau)/d * f_t
    check += (1.0 - a) * (s1 - tau * s0) / d;

    double f1pt = f_one_plus_tau(s0, s1, a, tau);
    const double eq_tol = 1e-8;
    // |opt - check| and f1pt measure the same slack in different units:
    // opt - check = (1-a)/d * f1pt / tau.
    const double f1pt_eq_tol = eq_tol * tau * d / (1.0 - a);

    bool equality_holds = std::abs(opt - check) <= eq_tol;
    if (equality_holds) {
        if (f1pt > 10.0 * f1pt_eq_tol) {
            throw SolverError("world_check: equality test says world 1 but mass at 1+tau is positive");
        }
        return World::World1;
    }
    if (f1pt <= 0.0) {
        throw SolverError("world_check: equality test says world 2 but mass at 1+tau is nonpositive");
    }
    return World::World2;
}

PurchaseDistribution greedy_with_opt(const ProblemConfig& config, double opt) {
    GreedyState st(config);
    PurchaseDistribution f = make_distribution(st.grid);

    double s0 = 0.0, s1 = 0.0;
    auto place = [&](std::size_t k, double m) {
        if (m < 0.0) m = 0.0;
        f.masses[k - 1] = m;
        st.cum[k] = st.cum[k - 1] + m;
        s0 += m;
        s1 += st.grid.time_of(k) * m;
    };

    const double a = config.a;
    place(1, std::min(config.delta, (opt - 1.0) * config.tau / (1.0 - a)));
    for (std::size_t k = 2; k <= st.k1; ++k) {
        const double x = st.grid.time_of(k);
        double m = cr_tight_leq1(x, opt, a, s0, s1);
        if (k <= st.k_l3) m = std::min(m, st.interval_budget(x, k));
        place(k, m);
    }

    if (world_check(f, opt, config) == World::World1) {
        f.mass_inf = regime_threshold(a, opt);
        double total = s0 + f.mass_inf;
        if (std::abs(total - 1.0) > 1e-7) {
            std::ostringstream os;
            os << "greedy_with_opt: world-1 result sums to " << total
               << "; the supplied opt is not the true optimum";
            throw SolverError(os.str());
        }
        return f;
    }

    for (std::size_t k = st.k1 + 1; k <= st.grid.count; ++k) {
        const double x = st.grid.time_of(k);
        double m = cr_tight_geq1(x, opt, a, s0, s1);
        if (k > st.k_l5) {
            m = std::min(m, st.suffix_budget(k));
        } else if (k > st.k_i3) {
            m = std::min(m, st.interval_budget(x, k));
        }
        if (m < -1e-9) break;  // opt guess infeasible; caught by the sum check below
        if (m < 0.0) m = 0.0;
        double remaining = 1.0 - s0;
        if (remaining <= m + 1e-12) {
            // At the true optimum the tight amount exceeds the missing mass
            // only by accumulated rounding; a large overshoot means the
            // supplied opt is above the true optimum.
            if (m > remaining + 1e-3) {
                std::ostringstream os;
                os << "greedy_with_opt: mass reaches 1 at t=" << x << " with overshoot "
                   << m - remaining << "; the supplied opt exceeds the true optimum";
                throw SolverError(os.str());
            }
            place(k, std::max(remaining, 0.0));
            return f;
        }
        place(k, m);
        if (k > st.k_l5 && m <= kZeroTol && st.suffix_budget(k + 1) <= kZeroTol) {
            break;  // suffix budget exhausted with mass still missing
        }
    }

    std::ostringstream os;
    os << "greedy_with_opt: total mass " << s0
       << " != 1; the supplied opt is not the true optimum";
    throw SolverError(os.str());
}

}  // namespace skirent
