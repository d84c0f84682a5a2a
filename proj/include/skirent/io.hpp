#pragma once

#include <string>

#include "skirent/binsearch.hpp"
#include "skirent/model.hpp"

namespace skirent {

/// On-disk solution: the configuration echo, the distribution, and solver
/// diagnostics.  Serializes to JSON; doubles round-trip exactly.
struct SolutionFile {
    ProblemConfig config;
    PurchaseDistribution f;
    double opt = 0.0;
    World world = World::World2;
    std::string solver;  // "binsearch" or "lp"
    std::size_t iterations = 0;
    std::size_t clamp_warnings = 0;
};

SolutionFile make_solution_file(const ProblemConfig& config, const SolveResult& result,
                                const std::string& solver);

std::string solution_to_json(const SolutionFile& sol);
SolutionFile solution_from_json(const std::string& text);

/// Plot data: one `t,f,cr,badmass` row per grid point plus a final row with
/// t rendered as "inf".  17 significant digits.
std::string export_csv(const PurchaseDistribution& f, const ProblemConfig& config);

}  // namespace skirent
