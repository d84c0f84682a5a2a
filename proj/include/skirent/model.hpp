#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace skirent {

/// Thrown for invalid parameter combinations (regime violations,
/// misaligned grids, malformed config files).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when a solver cannot complete (support cap exceeded,
/// infeasible program, iteration limit).
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Closed-form thresholds partitioning the time axis by bad-interval shape.
/// Requires 2 - a <= gamma < 1/a.
struct RegimeBoundaries {
    double b1;  // end of the prefix-shaped region
    double l3;  // start of the empty region
    double i3;  // end of the empty region; i3 = (1-a)*lb
    double lb;  // last point outside every suffix-shaped bad interval
    double l5;  // start of the suffix-shaped region; l5 = lb + 1
};

RegimeBoundaries boundaries(double a, double gamma);

/// delta* = (opt - 1) / (1/a - 1).  Comparing delta against it separates
/// the large-delta regime (zero mass after 1, mass at infinity) from the
/// small-delta regime (mass beyond 1, exactly delta in the far suffix).
double regime_threshold(double a, double opt);

/// Problem inputs.  a in [0,1) is the post-purchase rental slope, (gamma,
/// delta) the tail constraint, tau the grid step, epsilon the binary-search
/// accuracy, x_max the safety cap on solver support.
struct ProblemConfig {
    double a = 0.5;
    double gamma = 1.5;
    double delta = 1.0;
    double tau = 1e-3;
    double epsilon = 1e-6;
    double x_max = 0.0;  // 0 means "derive default from boundaries"

    /// Validates ranges, the solver regime 2-a <= gamma < 1/a, and (for
    /// delta < 1) grid alignment of all five boundaries.  Fills x_max
    /// with its default when unset.  Throws ConfigError.
    void validate();

    RegimeBoundaries bounds() const { return boundaries(a, gamma); }
};

ProblemConfig config_from_json(const std::string& json_text);

/// Uniform grid {k*tau : 1 <= k <= count} plus a distinguished infinity slot.
struct TimeGrid {
    double tau = 0.0;
    std::size_t count = 0;

    double time_of(std::size_t index) const { return static_cast<double>(index) * tau; }
    double end() const { return time_of(count); }

    /// Nearest grid index for an aligned time; throws ConfigError if t/tau
    /// is not within 1e-9 of an integer.
    std::size_t index_of(double t) const;

    /// Largest index k with k*tau <= t + tol (0 if none).  Safe for
    /// off-grid times.
    std::size_t floor_index(double t, double tol) const;
};

/// True if b/tau is within 1e-9 of an integer.
bool aligned(double b, double tau);

TimeGrid build_grid(const ProblemConfig& config, double support_end);

}  // namespace skirent
