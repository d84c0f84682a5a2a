#include <cmath>

#include "doctest.h"

#include "skirent/badinterval.hpp"
#include "skirent/model.hpp"

using namespace skirent;

namespace {

PurchaseDistribution uniform10() {
    // 0.1 on each of {0.1, ..., 1.0}.
    TimeGrid g;
    g.tau = 0.1;
    g.count = 10;
    PurchaseDistribution f = make_distribution(g);
    for (double& m : f.masses) m = 0.1;
    return f;
}

}  // namespace

TEST_CASE("bad_interval: the five shapes at a=0.5, gamma=1.5") {
    const double a = 0.5, g = 1.5;

    BadInterval iv = bad_interval(1.0, a, g);
    CHECK(iv.kind == BadInterval::Kind::Empty);

    iv = bad_interval(0.8, a, g);
    CHECK(iv.kind == BadInterval::Kind::Bounded);
    CHECK(iv.left == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(iv.right == doctest::Approx(0.8).epsilon(1e-12));

    iv = bad_interval(2.0, a, g);
    CHECK(iv.kind == BadInterval::Kind::Bounded);
    CHECK(iv.left == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(iv.right == doctest::Approx(2.0).epsilon(1e-12));

    iv = bad_interval(4.0, a, g);
    CHECK(iv.kind == BadInterval::Kind::Suffix);
    CHECK(iv.left == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(iv.includes_infinity());

    iv = bad_interval(kInfinity, a, g);
    CHECK(iv.kind == BadInterval::Kind::InfinityOnly);
    CHECK(iv.includes_infinity());

    // The full prefix is bad for very small stopping times.
    iv = bad_interval(0.3, a, g);
    CHECK(iv.kind == BadInterval::Kind::Bounded);
    CHECK(iv.left == doctest::Approx(0.0));
    CHECK(iv.right == doctest::Approx(0.3));

    CHECK_THROWS_AS(bad_interval(-0.1, a, g), ConfigError);
}

TEST_CASE("bad_interval: left-endpoint continuity at the regime seams") {
    for (double a : {0.3, 0.5, 0.8}) {
        for (double gamma : {2.0 - a, 2.0 - a + 0.4 * (1.0 / a - 2.0 + a)}) {
            RegimeBoundaries rb = boundaries(a, gamma);
            const double eps = 1e-9;

            // Just past b1 the mid-shape left endpoint emerges from 0.
            if (rb.b1 + eps < rb.l3) {
                BadInterval iv = bad_interval(rb.b1 + eps, a, gamma);
                if (iv.kind == BadInterval::Kind::Bounded) CHECK(iv.left < 1e-8);
            }
            // Just below l3 the interval has vanishing length.
            {
                double x = rb.l3 - eps;
                BadInterval iv = bad_interval(x, a, gamma);
                if (iv.kind == BadInterval::Kind::Bounded) CHECK(x - iv.left < 1e-8);
            }
            // Just past i3 it reappears with vanishing length.
            {
                double x = rb.i3 + eps;
                BadInterval iv = bad_interval(x, a, gamma);
                if (iv.kind == BadInterval::Kind::Bounded) CHECK(x - iv.left < 1e-8);
            }
            // Just past l5 the suffix starts at lb.
            {
                BadInterval iv = bad_interval(rb.l5 + eps, a, gamma);
                CHECK(iv.kind == BadInterval::Kind::Suffix);
                CHECK(iv.left == doctest::Approx(rb.lb).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("bad_interval: left < x, short late intervals, monotone left endpoint") {
    const double a = 0.6, gamma = 1.45;
    RegimeBoundaries rb = boundaries(a, gamma);
    double prev_left = -1.0;
    for (double x = 0.01; x <= rb.l5 + 3.0; x += 0.0137) {
        BadInterval iv = bad_interval(x, a, gamma);
        if (iv.kind == BadInterval::Kind::Empty) {
            prev_left = -1.0;
            continue;
        }
        CHECK(iv.left < x);
        if (iv.kind == BadInterval::Kind::Bounded && x > rb.i3) {
            CHECK(iv.right - iv.left < 1.0);
        }
        if (x > rb.i3) {  // left endpoint nondecreasing past the empty region
            CHECK(iv.left >= prev_left - 1e-12);
            prev_left = iv.left;
        }
    }
}

TEST_CASE("bad_interval: steep-gamma branch (gamma >= 1/a) is empty past l3") {
    const double a = 0.4, gamma = 2.6;  // gamma > 1/a = 2.5
    RegimeBoundaries direct{(1.0 - a) / (gamma - a), (1.0 - a) / (gamma - 1.0), 0, 0, 0};
    CHECK(bad_interval(direct.b1 / 2.0, a, gamma).kind == BadInterval::Kind::Bounded);
    BadInterval mid = bad_interval((direct.b1 + direct.l3) / 2.0, a, gamma);
    CHECK(mid.kind == BadInterval::Kind::Bounded);
    CHECK(mid.left > 0.0);
    CHECK(bad_interval(direct.l3 + 0.01, a, gamma).kind == BadInterval::Kind::Empty);
    CHECK(bad_interval(5.0, a, gamma).kind == BadInterval::Kind::Empty);
    CHECK(bad_interval(kInfinity, a, gamma).kind == BadInterval::Kind::InfinityOnly);
}

TEST_CASE("mass_in: reference sums") {
    PurchaseDistribution at_inf;
    at_inf.grid.tau = 0.1;
    at_inf.grid.count = 10;
    at_inf.masses.assign(10, 0.0);
    at_inf.mass_inf = 1.0;
    CHECK(mass_in(at_inf, BadInterval::suffix(2.5)) == doctest::Approx(1.0));
    CHECK(mass_in(at_inf, BadInterval::infinity_only()) == doctest::Approx(1.0));
    CHECK(mass_in(at_inf, BadInterval::empty()) == doctest::Approx(0.0));

    PurchaseDistribution f = uniform10();
    CHECK(mass_in(f, BadInterval::empty()) == doctest::Approx(0.0));
    // Open left, closed right: exactly the points 0.7 and 0.8.
    CHECK(mass_in(f, BadInterval::bounded(0.6, 0.8)) == doctest::Approx(0.2).epsilon(1e-12));
    // Endpoint on a grid point stays excluded on the left, included on the right.
    CHECK(mass_in(f, BadInterval::bounded(0.1, 1.0)) == doctest::Approx(0.9).epsilon(1e-12));
    // Suffix clamps to grid extent; mass beyond the grid is zero.
    CHECK(mass_in(f, BadInterval::suffix(0.85)) == doctest::Approx(0.2).epsilon(1e-12));
}
