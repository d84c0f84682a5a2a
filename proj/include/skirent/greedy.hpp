#pragma once

#include <cstddef>

#include "skirent/distribution.hpp"
#include "skirent/model.hpp"

namespace skirent {

enum class Termination {
    MassReachedOne,        // cumulative finite mass reached 1
    WorldOneExit,          // zero mass at 1+tau kept the ratio tight; mass sent to infinity
    SuffixBudgetExhausted, // far-suffix budget hit zero beyond l5
    RatioInfeasible,       // tight amount went negative: no continuation satisfies T
    CapHit,                // x exceeded x_max without terminating
};

enum class World { World1, World2 };

/// Output of one greedy pass under a guessed ratio.  Masses are
/// unconstrained in total; termination says why the pass stopped.
struct PartialDistribution {
    PurchaseDistribution f;
    Termination termination = Termination::CapHit;
    std::size_t clamp_warnings = 0;  // tight amounts clamped up from tiny negatives
};

/// Mass needed at 1+tau to keep the ratio tight, from the [0,1] prefix
/// sums: tau * (s0 - 1 + a*s1).
double f_one_plus_tau(double s0, double s1, double a, double tau);

/// One left-to-right greedy pass at ratio guess T: at each grid point
/// place the largest mass keeping the guessed-ratio constraint and every
/// mass constraint satisfied.  Throws SolverError on CapHit.
PartialDistribution alg_subroutine(const ProblemConfig& config, double T);

/// World classification from the greedy [0,1] prefix: World1 when adding
/// zero mass at 1+tau leaves the ratio tight (checked two ways; the
/// equality test and the sign of f_one_plus_tau must agree).
World world_check(const PurchaseDistribution& prefix, double opt, const ProblemConfig& config);

/// The known-optimum greedy: same pass as alg_subroutine but, past time 1,
/// stops by placing the remaining mass once it fits, and in world 1 sets
/// mass_inf = (opt-1)/(1/a-1).  Throws SolverError if the result does not
/// sum to 1 (i.e. opt was not the true optimum).
PurchaseDistribution greedy_with_opt(const ProblemConfig& config, double opt);

}  // namespace skirent
