#include "skirent/ratio.hpp"

#include <cmath>

#include "skirent/badinterval.hpp"

namespace skirent {

double alpha(double t, double x, double a) {
    if (t < 0.0 || x < 0.0) throw ConfigError("alpha: negative time");
    if (x == 0.0) return 1.0;  // limit from above: no skiing, ratio pinned at 1
    if (std::isinf(x)) {
        return std::isinf(t) ? 1.0 / a : 1.0;
    }
    if (t > x) {
        return x <= 1.0 ? 1.0 : x / (1.0 - a + a * x);
    }
    double cost = t + 1.0 - a + a * (x - t);
    return x <= 1.0 ? cost / x : cost / (1.0 - a + a * x);
}

double expected_cr(const PrefixSums& ps, const TimeGrid& grid, double x, double a) {
    if (std::isinf(x)) {
        return 1.0 + (1.0 / a - 1.0) * ps.mass_inf();
    }
    if (x <= 0.0) return 1.0;
    std::size_t kx = grid.floor_index(x, edge_tol(grid.tau));
    double s0 = ps.s0(kx);
    double s1 = ps.s1(kx);
    double after = ps.total_finite() - s0 + ps.mass_inf();
    if (x <= 1.0) {
        return a * s0 + (1.0 - a) * (s0 + s1) / x + after;
    }
    double d = 1.0 - a + a * x;
    return s0 + (1.0 - a) * s1 / d + x / d * after;
}

double expected_cr(const PurchaseDistribution& f, double x, double a) {
    PrefixSums ps(f);
    if (std::abs(ps.total_finite() + ps.mass_inf() - 1.0) > kMassTol) {
        throw ConfigError("expected_cr: distribution does not sum to 1");
    }
    return expected_cr(ps, f.grid, x, a);
}

double partial_cr(const PrefixSums& ps, const TimeGrid& grid, double x, double a) {
    if (x <= 0.0) return 1.0;
    std::size_t kx = grid.floor_index(x, edge_tol(grid.tau));
    double s0 = ps.s0(kx);
    double s1 = ps.s1(kx);
    if (x <= 1.0) {
        return (1.0 - a) * ((1.0 - x) * s0 + s1) / x + 1.0;
    }
    double d = 1.0 - a + a * x;
    double shortfall = 1.0 - s0;
    if (shortfall < 0.0) shortfall = 0.0;
    return s0 + (1.0 - a) * s1 / d + x / d * shortfall;
}

double partial_cr(const PurchaseDistribution& f, double x, double a) {
    PrefixSums ps(f);
    return partial_cr(ps, f.grid, x, a);
}

SupCr sup_expected_cr(const PurchaseDistribution& f, double a) {
    PrefixSums ps(f);
    if (std::abs(ps.total_finite() + ps.mass_inf() - 1.0) > kMassTol) {
        throw ConfigError("sup_expected_cr: distribution does not sum to 1");
    }
    SupCr best{expected_cr(ps, f.grid, f.grid.time_of(1), a), f.grid.time_of(1)};
    for (std::size_t k = 2; k <= f.grid.count; ++k) {
        double x = f.grid.time_of(k);
        double v = expected_cr(ps, f.grid, x, a);
        if (v > best.value) best = {v, x};
    }
    double vinf = expected_cr(ps, f.grid, kInfinity, a);
    if (vinf > best.value) best = {vinf, kInfinity};
    return best;
}

}  // namespace skirent
