#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "skirent/binsearch.hpp"
#include "skirent/distribution.hpp"
#include "skirent/model.hpp"

namespace skirent {

/// Result of a pointwise scan: the worst violation and where it happened.
struct Violation {
    double max_excess = 0.0;  // negative means slack everywhere
    double worst_x = 0.0;     // grid time, or infinity
    bool pass = false;
};

/// Worst bad-interval mass overrun over all grid stopping times and
/// infinity; passes at 1e-9.
Violation verify_feasibility(const PurchaseDistribution& f, const ProblemConfig& config);

/// Worst expected-ratio excess over `bound` across all grid stopping times
/// and infinity; passes at 1e-7.
Violation verify_cr(const PurchaseDistribution& f, const ProblemConfig& config, double bound);

enum class Tightness { CrTight, MassTight, Both, Neither };

struct TightPoint {
    double x;
    Tightness tightness;
    double cr_slack;    // opt - expected_cr(x)
    double mass_slack;  // delta - bad-interval mass at x
};

struct ExpSegment {
    double start;  // first grid time of the stretch
    double end;    // last grid time
    double base;   // mean consecutive-mass ratio, ~ 1+tau
};

struct StructureReport {
    World world = World::World2;
    std::vector<TightPoint> tight_map;
    std::optional<double> p;  // first mass-tight point after 1
    double suffix_mass = 0.0;  // mass on (L_b, infinity]
    std::vector<ExpSegment> segments;
    std::vector<std::string> zero_interval_failures;  // empty = pass
    double max_cr = 0.0;
    double max_mass_violation = 0.0;
    std::string to_json() const;
};

/// Structure-theorem diagnostics: per-point tightness at tolerance 1e-6,
/// exponential stretches (>= 3 consecutive points with mass ratio within
/// 1e-5 relative of 1+tau), the first mass-tight point after 1, suffix
/// mass, world, and ratio monotonicity over zero intervals after 1.
StructureReport structure_report(const PurchaseDistribution& f, const ProblemConfig& config,
                                 double opt);

struct SolverGap {
    SolveResult greedy;
    SolveResult lp;
    double objective_gap;      // |lp.opt - greedy.opt|
    double prefix_sup_norm;    // sup over [0,1] of |mass difference|
    double beyond_one_sup_norm;  // sup over (1, L_b] of |mass difference|
};

/// Run both solvers on the same configuration and measure agreement.
SolverGap compare_solvers(const ProblemConfig& config);

}  // namespace skirent
