#pragma once

#include <cstddef>

#include "skirent/greedy.hpp"

namespace skirent {

/// Result of the bisection solver.
struct SolveResult {
    PurchaseDistribution f;   // normalized: finite masses + mass_inf sum to 1
    double opt = 0.0;         // converged ratio guess
    World world = World::World2;
    std::size_t iterations = 0;
    std::size_t clamp_warnings = 0;
};

/// Bisect the guessed ratio on [e/(e-1+a), 2-a] down to width epsilon,
/// testing whether the greedy pass accumulates total mass >= 1.  The
/// returned distribution is the final greedy pass at the upper endpoint,
/// truncated at the first grid point where cumulative mass reaches 1
/// (excess trimmed there); a WorldOneExit pass instead normalizes the
/// residual into mass_inf.
SolveResult binary_search(const ProblemConfig& config);

}  // namespace skirent
