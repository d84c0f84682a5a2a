#pragma once

#include <cstddef>
#include <vector>

#include "skirent/model.hpp"

namespace skirent {

/// Nonnegative mass on grid points {tau,...,K*tau} plus a mass-at-infinity
/// slot.  A full purchase distribution sums to 1; partial mass functions
/// (solver intermediates) need not.
struct PurchaseDistribution {
    TimeGrid grid;
    std::vector<double> masses;  // masses[k] = f at time (k+1)*tau
    double mass_inf = 0.0;

    double total_finite() const;
    double total() const { return total_finite() + mass_inf; }

    double mass_at_index(std::size_t k) const {  // 1-based grid index
        return (k >= 1 && k <= masses.size()) ? masses[k - 1] : 0.0;
    }
};

PurchaseDistribution make_distribution(const TimeGrid& grid);

/// Cumulative mass and first moment over grid prefixes.
/// s0(k) = sum_{j<=k} f_j,  s1(k) = sum_{j<=k} (j*tau)*f_j.
class PrefixSums {
public:
    explicit PrefixSums(const PurchaseDistribution& f);

    double s0(std::size_t k) const { return s0_[k > count_ ? count_ : k]; }
    double s1(std::size_t k) const { return s1_[k > count_ ? count_ : k]; }
    double total_finite() const { return s0_[count_]; }
    double mass_inf() const { return mass_inf_; }
    std::size_t count() const { return count_; }

    /// Mass over grid indices (lo, hi] (both clamped to the grid).
    double range_mass(std::size_t lo, std::size_t hi) const {
        if (hi > count_) hi = count_;
        if (lo > hi) return 0.0;
        return s0_[hi] - s0_[lo];
    }

private:
    std::size_t count_;
    double mass_inf_;
    std::vector<double> s0_;
    std::vector<double> s1_;
};

}  // namespace skirent
