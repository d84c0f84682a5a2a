#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Sparse>

#include "skirent/dense_simplex.hpp"  // LpStatus

namespace skirent {

/// An equality-form LP (min c.x, Ax = b, x >= 0) with a caller-supplied
/// starting basis.  Columns flagged artificial carry phase-1 cost 1 and are
/// barred from entering in phase 2; if none are flagged, phase 1 is skipped
/// (the starting basis must then be primal feasible).
struct SparseSimplexProblem {
    Eigen::SparseMatrix<double> A;   // m x n, compressed column-major
    Eigen::VectorXd b;
    Eigen::VectorXd c;
    std::vector<int> initial_basis;  // length m, one column index per row
    std::vector<char> is_artificial; // length n
};

struct SparseSimplexResult {
    LpStatus status = LpStatus::IterationLimit;
    Eigen::VectorXd x;
    double objective = 0.0;
    std::size_t iterations = 0;
    std::size_t refactorizations = 0;
};

/// Revised simplex with product-form basis updates and periodic SparseLU
/// refactorization.  Dantzig pricing, falling back to Bland's rule after a
/// run of degenerate steps.
SparseSimplexResult sparse_simplex(const SparseSimplexProblem& problem,
                                   std::size_t max_iterations = 200000);

}  // namespace skirent
