#include "skirent/binsearch.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace skirent {

namespace {

constexpr double kReachedOne = 1.0 - 1e-12;

// Bracket width used to construct the returned distribution.  The search
// loop stops at the requested tolerance (that is what `iterations` counts),
// but the certificate is built from a near-machine-width bracket: building
// at a guess eps above the optimum perturbs every placed mass by O(eps),
// which would leak into the structure checks downstream.
constexpr double kPolishWidth = 1e-12;

// Mass the pass certifies: a world-1 exit proposes mass at infinity up to
// the asymptotic-ratio cap, but only delta of it is ever admissible (the
// bad interval of x = infinity is {infinity} itself).
double pass_total(const PartialDistribution& p, double delta) {
    double s = std::min(p.f.mass_inf, delta);
    for (double m : p.f.masses) s += m;
    return s;
}

}  // namespace

SolveResult binary_search(const ProblemConfig& config) {
    const double a = config.a;
    double lo = std::exp(1.0) / (std::exp(1.0) - 1.0 + a);
    double hi = 2.0 - a;

    SolveResult res;
    while (hi - lo > config.epsilon) {
        double mid = 0.5 * (lo + hi);
        PartialDistribution p = alg_subroutine(config, mid);
        if (pass_total(p, config.delta) >= kReachedOne) {
            hi = mid;
        } else {
            lo = mid;
        }
        ++res.iterations;
    }

    while (hi - lo > kPolishWidth) {
        double mid = 0.5 * (lo + hi);
        PartialDistribution p = alg_subroutine(config, mid);
        if (pass_total(p, config.delta) >= kReachedOne) {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    PartialDistribution fin = alg_subroutine(config, hi);
    res.opt = hi;
    res.clamp_warnings = fin.clamp_warnings;
    res.f = std::move(fin.f);

    if (fin.termination == Termination::WorldOneExit) {
        res.world = World::World1;
        double finite = 0.0;
        for (double m : res.f.masses) finite += m;
        res.f.mass_inf = 1.0 - finite;  // normalize the residual into infinity
        if (res.f.mass_inf < 0.0) {
            throw SolverError("binary_search: finite mass exceeds 1 on a world-1 exit");
        }
        if (res.f.mass_inf > config.delta + 1e-9) {
            throw SolverError("binary_search: world-1 exit needs more than delta at infinity");
        }
        return res;
    }

    res.world = World::World2;
    // Truncate at the first grid point where cumulative mass reaches 1 and
    // trim the mass there so the result is exactly normalized.
    double cum = 0.0;
    std::size_t cut = 0;
    for (std::size_t k = 1; k <= res.f.grid.count; ++k) {
        cum += res.f.masses[k - 1];
        if (cum >= kReachedOne) {
            cut = k;
            break;
        }
    }
    if (cut == 0) {
        std::ostringstream os;
        os << "binary_search: converged pass at T=" << hi << " only accumulated mass " << cum;
        throw SolverError(os.str());
    }
    res.f.masses.resize(cut);
    res.f.grid.count = cut;
    res.f.masses[cut - 1] -= cum - 1.0;
    if (res.f.masses[cut - 1] < 0.0) res.f.masses[cut - 1] = 0.0;
    return res;
}

}  // namespace skirent
