#include "doctest.h"

#include "tsili/random_baseline.hpp"

using namespace tsili;

TEST_CASE("exact closed forms equal brute-force enumeration for small N") {
    for (long long n = 1; n <= 8; ++n) {
        for (long long k = 1; k <= n; ++k) {
            CAPTURE(n);
            CAPTURE(k);
            CHECK(random_ap_rational(n, k) == brute_force_random(Indicator::AP, n, k));
            CHECK(random_rr_rational(n, k) == brute_force_random(Indicator::RR, n, k));
        }
    }
}

TEST_CASE("brute-force spot values") {
    CHECK(brute_force_random(Indicator::RR, 2, 1) == Rational(3, 4));
    CHECK(brute_force_random(Indicator::AP, 2, 1) == Rational(3, 4));
    CHECK(brute_force_random(Indicator::AP, 3, 3) == 1);
    for (long long n = 1; n <= 12; ++n) {
        CHECK(brute_force_random(Indicator::RR, n, n) == 1);
    }
}

TEST_CASE("brute force is bounded and typed") {
    CHECK_THROWS_AS(brute_force_random(Indicator::RR, 13, 2), ConfigError);
    CHECK_THROWS_AS(brute_force_random(Indicator::F1, 4, 2), ConfigError);
    CHECK_THROWS_AS(brute_force_random(Indicator::AP, 4, 0), ConfigError);
}

TEST_CASE("exact path bounds") {
    CHECK(random_ap_rational(1, 1) == 1);
    CHECK(random_rr_rational(1, 1) == 1);
    CHECK_THROWS_AS(random_ap_rational(kExactBaselineLimit + 1, 1), ConfigError);
}
