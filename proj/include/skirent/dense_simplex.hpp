#pragma once

#include <cstddef>
#include <vector>

namespace skirent {

enum class Relation { LE, GE, EQ };

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

/// A small dense linear program: minimize c.x subject to rows, x >= 0.
struct DenseLp {
    std::size_t num_vars = 0;
    std::vector<double> objective;          // length num_vars
    std::vector<std::vector<double>> rows;  // each length num_vars
    std::vector<Relation> relations;
    std::vector<double> rhs;
};

struct DenseLpResult {
    LpStatus status = LpStatus::IterationLimit;
    std::vector<double> x;
    double objective = 0.0;
    std::size_t iterations = 0;
};

/// Two-phase tableau simplex with Bland's rule.  Intended for small
/// instances (a few hundred rows); the structured solver handles the rest.
DenseLpResult dense_simplex(const DenseLp& lp, std::size_t max_iterations = 1000000);

}  // namespace skirent
