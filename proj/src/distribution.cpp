#include "skirent/distribution.hpp"

namespace skirent {

double PurchaseDistribution::total_finite() const {
    double s = 0.0;
    for (double m : masses) s += m;
    return s;
}

PurchaseDistribution make_distribution(const TimeGrid& grid) {
    PurchaseDistribution f;
    f.grid = grid;
    f.masses.assign(grid.count, 0.0);
    return f;
}

PrefixSums::PrefixSums(const PurchaseDistribution& f)
    : count_(f.masses.size()), mass_inf_(f.mass_inf), s0_(count_ + 1, 0.0), s1_(count_ + 1, 0.0) {
    for (std::size_t k = 1; k <= count_; ++k) {
        double m = f.masses[k - 1];
        s0_[k] = s0_[k - 1] + m;
        s1_[k] = s1_[k - 1] + f.grid.time_of(k) * m;
    }
}

}  // namespace skirent
