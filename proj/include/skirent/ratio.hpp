#pragma once

#include <cstddef>
#include <utility>

#include "skirent/distribution.hpp"

namespace skirent {

/// Normalization tolerance for full distributions.
inline constexpr double kMassTol = 1e-9;

/// Pointwise competitive ratio for buy time t against stopping time x.
/// x = 0 is treated as the limit from above (ratio 1 for t > 0).
double alpha(double t, double x, double a);

/// Expected competitive ratio of a full distribution at stopping time x
/// (finite or infinite).  Throws ConfigError if f is not normalized.
double expected_cr(const PurchaseDistribution& f, double x, double a);
double expected_cr(const PrefixSums& ps, const TimeGrid& grid, double x, double a);

/// Left-hand side of the guessed-ratio constraint for a partial mass
/// function: the x<=1 constraint form, and for x>=1 the form whose
/// adversary term is max(0, 1 - mass placed so far).
double partial_cr(const PurchaseDistribution& f, double x, double a);
double partial_cr(const PrefixSums& ps, const TimeGrid& grid, double x, double a);

struct SupCr {
    double value;
    double argmax;  // grid time, or infinity
};

/// Maximum of expected_cr over all grid points and infinity; ties break
/// to the smallest x.  x = 0 is excluded (ratio defined as a limit).
SupCr sup_expected_cr(const PurchaseDistribution& f, double a);

}  // namespace skirent
