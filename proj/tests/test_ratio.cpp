#include <cmath>

#include "doctest.h"

#include "skirent/badinterval.hpp"
#include "skirent/distribution.hpp"
#include "skirent/model.hpp"
#include "skirent/ratio.hpp"

using namespace skirent;

namespace {

PurchaseDistribution zeros(double tau, std::size_t count) {
    TimeGrid g;
    g.tau = tau;
    g.count = count;
    return make_distribution(g);
}

}  // namespace

TEST_CASE("alpha: the four-case pointwise ratio") {
    CHECK(alpha(0.3, 0.5, 0.5) == doctest::Approx(1.8).epsilon(1e-12));  // (0.3+0.5+0.1)/0.5
    CHECK(alpha(0.8, 0.5, 0.5) == doctest::Approx(1.0));                 // buy after stop
    CHECK(alpha(0.5, 2.0, 0.5) == doctest::Approx(7.0 / 6.0).epsilon(1e-12));
    CHECK(alpha(0.0, 2.0, 0.5) == doctest::Approx(1.0));
    CHECK(alpha(0.0, 5.0, 0.3) == doctest::Approx(1.0));
    // Limits at infinity.
    CHECK(alpha(0.4, kInfinity, 0.5) == doctest::Approx(1.0));
    CHECK(alpha(kInfinity, kInfinity, 0.5) == doctest::Approx(2.0));  // 1/a
    CHECK(alpha(kInfinity, 0.7, 0.5) == doctest::Approx(1.0));        // never buying, x <= 1
    // x = 0 is the limit from above: ratio 1 for positive buy times.
    CHECK(alpha(0.3, 0.0, 0.5) == doctest::Approx(1.0));
    // Pointwise ratio never drops below 1.
    for (double t = 0.0; t <= 3.0; t += 0.17) {
        for (double x = 0.01; x <= 3.0; x += 0.23) {
            CHECK(alpha(t, x, 0.35) >= 1.0 - 1e-12);
        }
    }
}

TEST_CASE("expected_cr: closed-form spot checks") {
    PurchaseDistribution at_inf = zeros(0.1, 10);
    at_inf.mass_inf = 1.0;
    CHECK(expected_cr(at_inf, kInfinity, 0.5) == doctest::Approx(2.0));
    CHECK(expected_cr(at_inf, 0.7, 0.5) == doctest::Approx(1.0));

    // Half the mass at the earliest grid point, half never buying.
    PurchaseDistribution split = zeros(1e-4, 10);
    split.masses[0] = 0.5;
    split.mass_inf = 0.5;
    CHECK(expected_cr(split, 0.5, 0.5) == doctest::Approx(1.25).epsilon(1e-3));

    PurchaseDistribution bad = zeros(0.1, 10);
    bad.masses[0] = 0.4;  // sums to 0.4, not normalized
    CHECK_THROWS_AS(expected_cr(bad, 0.5, 0.5), ConfigError);
}

TEST_CASE("partial_cr: the guessed-ratio left-hand side") {
    PurchaseDistribution f = zeros(0.1, 30);
    CHECK(partial_cr(f, 2.0, 0.5) == doctest::Approx(2.0 / 1.5).epsilon(1e-12));
    CHECK(partial_cr(f, 0.5, 0.5) == doctest::Approx(1.0));

    // Prefix mass 1 concentrated at the first grid point of a fine grid
    // approximates buying at time zero: the adversary term vanishes.
    PurchaseDistribution g = zeros(1e-6, 40);
    g.masses[0] = 1.0;
    CHECK(partial_cr(g, 2.0, 0.5) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("sup_expected_cr: location and value of the maximum") {
    PurchaseDistribution at_inf = zeros(0.1, 10);
    at_inf.mass_inf = 1.0;
    SupCr s = sup_expected_cr(at_inf, 0.5);
    CHECK(s.value == doctest::Approx(2.0));
    CHECK(std::isinf(s.argmax));

    const double tau = 0.1;
    PurchaseDistribution early = zeros(tau, 20);
    early.masses[0] = 1.0;
    s = sup_expected_cr(early, 0.5);
    CHECK(s.argmax == doctest::Approx(tau));
    CHECK(s.value == doctest::Approx((tau + 1.0 - 0.5) / tau).epsilon(1e-12));
}

TEST_CASE("zero-suffix monotonicity: ratio is monotone past the support") {
    // Mass on [0,1] plus some at infinity; zero suffix beyond 1.
    PurchaseDistribution f = zeros(0.05, 400);  // grid out to 20
    for (std::size_t k = 1; k <= 20; ++k) f.masses[k - 1] = 0.04;
    f.mass_inf = 0.2;

    double limit = expected_cr(f, kInfinity, 0.5);
    bool increasing = expected_cr(f, 2.0, 0.5) > expected_cr(f, 1.0, 0.5);
    double last = expected_cr(f, 1.0, 0.5);
    for (std::size_t k = 24; k <= 400; k += 4) {  // ~100 samples on (1, 20]
        double v = expected_cr(f, f.grid.time_of(k), 0.5);
        if (increasing) {
            CHECK(v >= last - 1e-12);
        } else {
            CHECK(v <= last + 1e-12);
        }
        last = v;
    }
    CHECK(expected_cr(f, 20.0, 0.5) == doctest::Approx(limit).epsilon(1e-2));
}

TEST_CASE("zero-interval sign rule: slope follows c - a*E") {
    // Construct distributions with a zero interval on [1, 10] and tune the
    // split between early mass (moment E) and late/infinite mass (c).
    const double a = 0.5;
    auto build = [&](double early, double late, double inf) {
        PurchaseDistribution f = zeros(0.1, 200);  // out to 20
        f.masses[9] = early;                       // t = 1.0
        f.masses[149] = late;                      // t = 15.0
        f.mass_inf = inf;
        return f;
    };

    // c = 0.8, E = 0.2  ->  c - aE > 0: ratio rises over the gap.
    PurchaseDistribution up = build(0.2, 0.3, 0.5);
    CHECK(expected_cr(up, 10.0, a) > expected_cr(up, 2.0, a));

    // c = 0.05, E = 0.95 -> c - aE < 0: ratio falls over the gap.
    PurchaseDistribution down = build(0.95, 0.05, 0.0);
    CHECK(expected_cr(down, 10.0, a) < expected_cr(down, 2.0, a));
}

TEST_CASE("zero intervals inside [0,1] strictly decrease the ratio") {
    PurchaseDistribution f = zeros(0.05, 60);
    f.masses[0] = 0.5;  // t = 0.05, then nothing until past 1
    f.mass_inf = 0.5;
    double prev = expected_cr(f, 0.1, 0.5);
    for (double x = 0.15; x <= 1.0 + 1e-9; x += 0.05) {
        double v = expected_cr(f, x, 0.5);
        CHECK(v < prev);
        prev = v;
    }
}
