#include "skirent/verify.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

#include "skirent/badinterval.hpp"
#include "skirent/greedy.hpp"
#include "skirent/lp.hpp"
#include "skirent/ratio.hpp"

namespace skirent {

namespace {

constexpr double kFeasPass = 1e-9;
constexpr double kCrPass = 1e-7;
constexpr double kTightTol = 1e-6;
constexpr double kZeroMass = 1e-12;

// Stopping times worth scanning: every grid point out to l5 (bad intervals
// change nature there even beyond the support), since mass and ratio checks
// clamp reads past the support.
std::size_t scan_end(const PurchaseDistribution& f, const ProblemConfig& config) {
    RegimeBoundaries rb = config.bounds();
    auto beyond = static_cast<std::size_t>(std::ceil((rb.l5 + config.tau) / config.tau));
    return std::max(f.grid.count, beyond);
}

}  // namespace

Violation verify_feasibility(const PurchaseDistribution& f, const ProblemConfig& config) {
    PrefixSums ps(f);
    Violation v{-config.delta, 0.0, false};
    const std::size_t end = scan_end(f, config);
    for (std::size_t k = 1; k <= end; ++k) {
        double x = f.grid.tau * static_cast<double>(k);
        double excess = mass_in(ps, f.grid, bad_interval(x, config.a, config.gamma)) - config.delta;
        if (excess > v.max_excess) v = {excess, x, false};
    }
    double excess_inf = ps.mass_inf() - config.delta;
    if (excess_inf > v.max_excess) v = {excess_inf, kInfinity, false};
    v.pass = v.max_excess <= kFeasPass;
    return v;
}

Violation verify_cr(const PurchaseDistribution& f, const ProblemConfig& config, double bound) {
    PrefixSums ps(f);
    Violation v{-bound, 0.0, false};
    const std::size_t end = scan_end(f, config);
    for (std::size_t k = 1; k <= end; ++k) {
        double x = f.grid.tau * static_cast<double>(k);
        double excess = expected_cr(ps, f.grid, x, config.a) - bound;
        if (excess > v.max_excess) v = {excess, x, false};
    }
    double excess_inf = expected_cr(ps, f.grid, kInfinity, config.a) - bound;
    if (excess_inf > v.max_excess) v = {excess_inf, kInfinity, false};
    v.pass = v.max_excess <= kCrPass;
    return v;
}

StructureReport structure_report(const PurchaseDistribution& f, const ProblemConfig& config,
                                 double opt) {
    const double a = config.a;
    const double tau = config.tau;
    PrefixSums ps(f);
    RegimeBoundaries rb = config.bounds();
    StructureReport rep;

    rep.world = config.delta >= regime_threshold(a, opt) ? World::World1 : World::World2;

    const std::size_t k1 = f.grid.floor_index(1.0, edge_tol(tau));
    const std::size_t klb = f.grid.floor_index(rb.lb, edge_tol(tau));
    rep.suffix_mass = ps.range_mass(std::min(klb, ps.count()), ps.count()) + ps.mass_inf();

    rep.max_cr = expected_cr(ps, f.grid, kInfinity, a);
    for (std::size_t k = 1; k <= f.grid.count; ++k) {
        double x = f.grid.time_of(k);
        double cr = expected_cr(ps, f.grid, x, a);
        rep.max_cr = std::max(rep.max_cr, cr);
        double mass = mass_in(ps, f.grid, bad_interval(x, a, config.gamma));
        rep.max_mass_violation = std::max(rep.max_mass_violation, mass - config.delta);
        TightPoint tp{x, Tightness::Neither, opt - cr, config.delta - mass};
        bool crt = tp.cr_slack <= kTightTol;
        bool mt = tp.mass_slack <= kTightTol;
        tp.tightness = crt ? (mt ? Tightness::Both : Tightness::CrTight)
                           : (mt ? Tightness::MassTight : Tightness::Neither);
        rep.tight_map.push_back(tp);
        if (!rep.p && k > k1 && mt) rep.p = x;
    }
    rep.max_mass_violation =
        std::max(rep.max_mass_violation, ps.mass_inf() - config.delta);
    if (rep.max_mass_violation < 0.0) rep.max_mass_violation = 0.0;

    // Exponential stretches: runs of consecutive-mass ratios near 1+tau.
    const double base = 1.0 + tau;
    std::size_t run_start = 0;  // index (1-based) of the first point of the run
    std::size_t run_len = 1;
    double ratio_sum = 0.0;
    auto flush = [&](std::size_t last) {
        if (run_start >= 1 && run_len >= 3) {
            rep.segments.push_back({f.grid.time_of(run_start), f.grid.time_of(last),
                                    ratio_sum / static_cast<double>(run_len - 1)});
        }
        run_len = 1;
        ratio_sum = 0.0;
    };
    for (std::size_t k = 1; k + 1 <= f.grid.count; ++k) {
        double cur = f.masses[k - 1], nxt = f.masses[k];
        bool ok = cur > kZeroMass && nxt > kZeroMass &&
                  std::abs(nxt / cur - base) <= 1e-5 * base;
        if (ok) {
            if (run_len == 1) run_start = k;
            ++run_len;
            ratio_sum += nxt / cur;
        } else {
            flush(k);
        }
    }
    flush(f.grid.count);

    // Ratio monotonicity over zero intervals after time 1: strictly
    // decreasing in world 2, flat in world 1.
    std::size_t z_start = 0;
    auto check_zero_interval = [&](std::size_t first, std::size_t last) {
        if (last <= first) return;  // single point: no difference to take
        double len = f.grid.time_of(last) - f.grid.time_of(first);
        double tol = 1e-9 * len;
        for (std::size_t k = first; k < last; ++k) {
            double d = expected_cr(ps, f.grid, f.grid.time_of(k + 1), a) -
                       expected_cr(ps, f.grid, f.grid.time_of(k), a);
            bool bad = rep.world == World::World2 ? d >= tol : std::abs(d) > tol;
            if (bad) {
                std::ostringstream os;
                os << "zero interval [" << f.grid.time_of(first) << ", " << f.grid.time_of(last)
                   << "]: ratio step " << d << " at x=" << f.grid.time_of(k + 1)
                   << (rep.world == World::World2 ? " (expected strictly decreasing)"
                                                  : " (expected flat)");
                rep.zero_interval_failures.push_back(os.str());
                return;
            }
        }
    };
    for (std::size_t k = k1 + 1; k <= f.grid.count; ++k) {
        if (f.masses[k - 1] <= kZeroMass) {
            if (z_start == 0) z_start = k;
        } else if (z_start != 0) {
            check_zero_interval(z_start, k - 1);
            z_start = 0;
        }
    }
    if (z_start != 0) check_zero_interval(z_start, f.grid.count);

    return rep;
}

std::string StructureReport::to_json() const {
    nlohmann::json j;
    j["pass"] = max_mass_violation <= kFeasPass && zero_interval_failures.empty();
    j["max_cr"] = max_cr;
    j["max_mass_violation"] = max_mass_violation;
    j["world"] = world == World::World1 ? 1 : 2;
    if (p) {
        j["p"] = *p;
    } else {
        j["p"] = nullptr;
    }
    j["suffix_mass"] = suffix_mass;
    j["segments"] = nlohmann::json::array();
    for (const ExpSegment& s : segments) {
        j["segments"].push_back({{"start", s.start}, {"end", s.end}, {"base", s.base}});
    }
    j["zero_interval_failures"] = zero_interval_failures;
    return j.dump(2);
}

SolverGap compare_solvers(const ProblemConfig& config) {
    SolverGap gap{binary_search(config), solve_lp(build_lp(config)), 0.0, 0.0, 0.0};
    gap.objective_gap = std::abs(gap.lp.opt - gap.greedy.opt);

    const std::size_t k1 = gap.lp.f.grid.floor_index(1.0, edge_tol(config.tau));
    auto mass_at = [](const PurchaseDistribution& f, std::size_t k) {
        return k <= f.grid.count ? f.masses[k - 1] : 0.0;
    };
    std::size_t kmax = std::max(gap.greedy.f.grid.count, gap.lp.f.grid.count);
    for (std::size_t k = 1; k <= kmax; ++k) {
        double d = std::abs(mass_at(gap.greedy.f, k) - mass_at(gap.lp.f, k));
        if (k <= k1) {
            gap.prefix_sup_norm = std::max(gap.prefix_sup_norm, d);
        } else {
            gap.beyond_one_sup_norm = std::max(gap.beyond_one_sup_norm, d);
        }
    }
    return gap;
}

}  // namespace skirent
