#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "skirent/binsearch.hpp"  // SolveResult
#include "skirent/dense_simplex.hpp"
#include "skirent/model.hpp"

namespace skirent {

/// The exact finite-support LP: variables f at each grid point of (0, L_b],
/// plus f_inf and lambda; minimize lambda subject to the ratio rows (both
/// forms, x = 1 deliberately emitted twice), the ratio row at infinity, the
/// bad-interval mass rows, mass_inf <= delta, and total mass = 1.
///
/// The ratio rows are dense in the f variables, so the displayed form is
/// only materialized on demand; the large-grid solve path uses an
/// equivalent sparse formulation over running prefix sums.
class LPInstance {
public:
    explicit LPInstance(const ProblemConfig& config);

    const ProblemConfig& config() const { return config_; }
    const TimeGrid& grid() const { return grid_; }
    std::size_t num_time_vars() const { return grid_.count; }

    /// Variable order: [f_1 .. f_K, f_inf, lambda].  Throws SolverError when
    /// the instance is too large to hold densely.
    DenseLp dense(std::size_t max_time_vars = 2000) const;

    /// Human-readable labels for the dense rows, in emission order.
    std::vector<std::string> row_labels() const;

private:
    ProblemConfig config_;
    TimeGrid grid_;
};

LPInstance build_lp(const ProblemConfig& config);

/// Solve to optimality: a bundled dense tableau simplex for small grids, a
/// structured sparse revised simplex above that.  SolveResult.opt is the
/// optimal lambda; iterations counts simplex pivots.
SolveResult solve_lp(const LPInstance& instance);

/// CPLEX-style LP text interchange format (variables f_0001..., f_inf,
/// lambda) for external cross-checking.
std::string to_lp_format(const LPInstance& instance);

/// The structured sparse path, exposed for equivalence testing against the
/// dense backend.
SolveResult solve_lp_sparse(const LPInstance& instance);
SolveResult solve_lp_dense(const LPInstance& instance);

}  // namespace skirent
