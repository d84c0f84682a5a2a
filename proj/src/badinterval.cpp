#include "skirent/badinterval.hpp"

#include <cmath>

namespace skirent {

BadInterval bad_interval(double x, double a, double gamma) {
    if (x < 0.0) throw ConfigError("bad_interval: negative stopping time");
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("bad_interval: a must lie in (0,1)");
    if (gamma < 2.0 - a) throw ConfigError("bad_interval: gamma below 2-a");

    if (std::isinf(x)) return BadInterval::infinity_only();

    const double b1 = (1.0 - a) / (gamma - a);
    const double l3 = (1.0 - a) / (gamma - 1.0);

    if (gamma >= 1.0 / a) {
        // Bad intervals are nonempty only before l3.
        if (x <= b1) return x > 0.0 ? BadInterval::bounded(0.0, x) : BadInterval::empty();
        if (x < l3) return BadInterval::bounded((gamma - a) / (1.0 - a) * x - 1.0, x);
        return BadInterval::empty();
    }

    const double i3 = (gamma - 1.0) * (1.0 - a) / (1.0 - a * gamma);
    const double l5 = gamma * (1.0 - a) / (1.0 - a * gamma);

    if (x == 0.0) return BadInterval::empty();
    if (x <= b1) return BadInterval::bounded(0.0, x);
    if (x < l3) {
        double left = (gamma - a) / (1.0 - a) * x - 1.0;
        return left < x ? BadInterval::bounded(left, x) : BadInterval::empty();
    }
    if (x <= i3) return BadInterval::empty();
    double left = (gamma - 1.0) * a / (1.0 - a) * x + (gamma - 1.0);
    if (x <= l5) {
        // Degenerate at the i3/l5 boundaries under rounding: open-left
        // interval with left >= x holds nothing.
        return left < x ? BadInterval::bounded(left, x) : BadInterval::empty();
    }
    return BadInterval::suffix(left);
}

double mass_in(const PrefixSums& ps, const TimeGrid& grid, const BadInterval& iv) {
    const double tol = edge_tol(grid.tau);
    switch (iv.kind) {
        case BadInterval::Kind::Empty:
            return 0.0;
        case BadInterval::Kind::InfinityOnly:
            return ps.mass_inf();
        case BadInterval::Kind::Suffix: {
            std::size_t lo = grid.floor_index(iv.left, tol);  // indices > lo are inside
            return ps.range_mass(lo, ps.count()) + ps.mass_inf();
        }
        case BadInterval::Kind::Bounded: {
            std::size_t lo = grid.floor_index(iv.left, tol);
            std::size_t hi = grid.floor_index(iv.right, tol);
            return ps.range_mass(lo, hi);
        }
    }
    return 0.0;
}

double mass_in(const PurchaseDistribution& f, const BadInterval& iv) {
    PrefixSums ps(f);
    return mass_in(ps, f.grid, iv);
}

}  // namespace skirent
