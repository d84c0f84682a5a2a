#pragma once

#include <limits>

#include "skirent/distribution.hpp"
#include "skirent/model.hpp"

namespace skirent {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// The set of buy times whose ratio against stopping time x exceeds gamma.
/// Left endpoints are open, right endpoints closed.
struct BadInterval {
    enum class Kind { Empty, Bounded, Suffix, InfinityOnly };

    Kind kind = Kind::Empty;
    double left = 0.0;   // open; meaningful for Bounded and Suffix
    double right = 0.0;  // closed; meaningful for Bounded

    static BadInterval empty() { return {Kind::Empty, 0.0, 0.0}; }
    static BadInterval bounded(double left, double right) { return {Kind::Bounded, left, right}; }
    static BadInterval suffix(double left) { return {Kind::Suffix, left, kInfinity}; }
    static BadInterval infinity_only() { return {Kind::InfinityOnly, kInfinity, kInfinity}; }

    bool includes_infinity() const {
        return kind == Kind::Suffix || kind == Kind::InfinityOnly;
    }
};

/// Piecewise bad-interval formula.  Both branches (gamma >= 1/a and
/// 2-a <= gamma < 1/a) are supported; x may be infinite.
BadInterval bad_interval(double x, double a, double gamma);

/// Edge tolerance for grid membership at interval endpoints.
inline double edge_tol(double tau) { return tau * 1e-6; }

/// Sum of f over grid points strictly right of iv.left and at most
/// iv.right, plus the infinity slot when iv stretches there.
double mass_in(const PurchaseDistribution& f, const BadInterval& iv);
double mass_in(const PrefixSums& ps, const TimeGrid& grid, const BadInterval& iv);

}  // namespace skirent
