#include <doctest.h>

#include <cmath>
#include <cstring>

#include "datareq/curves.hpp"
#include "testutil.hpp"

using namespace datareq;

TEST_CASE("evaluate matches the closed forms") {
    CHECK(evaluate(CurveFamily::PowerLaw, {2, 0.5, 1}, 100) == doctest::Approx(21.0));
    CHECK(evaluate(CurveFamily::Arctan, {0, 0, 50}, 12345) == doctest::Approx(50.0));
    CHECK(evaluate(CurveFamily::AlgebraicRoot, {1, 1, 0}, 1) == doctest::Approx(50.0));
    CHECK(evaluate(CurveFamily::Logarithmic, {10, 1, 0}, 0) == doctest::Approx(0.0));
}

TEST_CASE("evaluate rejects undefined inputs") {
    CHECK_THROWS_AS(evaluate(CurveFamily::Logarithmic, {1, -5, 0}, 2), DomainError);
    CHECK_THROWS_AS(evaluate(CurveFamily::PowerLaw, {1, 0.5, 0}, -1), DomainError);
    CHECK_THROWS_AS(evaluate(CurveFamily::AlgebraicRoot, {1, 0, 0}, 10), DomainError);
    // Integer exponents keep negative sizes well-defined for the power law.
    CHECK(evaluate(CurveFamily::PowerLaw, {1, 2, 0}, -3) == doctest::Approx(9.0));
}

TEST_CASE("evaluate is deterministic") {
    const Params p{1.37, 0.42, -2.5};
    const double a = evaluate(CurveFamily::PowerLaw, p, 12345.678);
    const double b = evaluate(CurveFamily::PowerLaw, p, 12345.678);
    CHECK(std::memcmp(&a, &b, sizeof a) == 0);
}

TEST_CASE("supremum of saturating and diverging families") {
    CHECK(*supremum(CurveFamily::Arctan, {1, 0, 0}) == doctest::Approx(100.0));
    CHECK_FALSE(supremum(CurveFamily::PowerLaw, {1, 0.5, 0}).has_value());
    CHECK(*supremum(CurveFamily::AlgebraicRoot, {2, 1, 5}) == doctest::Approx(55.0));
    CHECK_FALSE(supremum(CurveFamily::Logarithmic, {3, 1, 0}).has_value());
    CHECK_THROWS_AS(supremum(CurveFamily::AlgebraicRoot, {0, 1, 0}), DomainError);
    // Constant models still have a limit.
    CHECK(*supremum(CurveFamily::PowerLaw, {0, 0.5, 7}) == doctest::Approx(7.0));
    CHECK(*supremum(CurveFamily::Arctan, {0, 0, 7}) == doctest::Approx(7.0));
}

TEST_CASE("supremum agrees with evaluate far out for saturating families") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        for (CurveFamily family : {CurveFamily::Arctan, CurveFamily::AlgebraicRoot}) {
            const Params p = testutil::random_monotone_params(family, rng);
            const double far = evaluate(family, p, 1e12);
            CHECK(std::fabs(*supremum(family, p) - far) < 1.0);
        }
    }
}

TEST_CASE("is_monotone_on sign rules and probing") {
    CHECK(is_monotone_on(CurveFamily::PowerLaw, {1, 0.5, 0}, 1, 1e6));
    CHECK_FALSE(is_monotone_on(CurveFamily::PowerLaw, {-1, 0.5, 0}, 1, 1e6));
    CHECK(is_monotone_on(CurveFamily::Arctan, {1e-5, 2, 3}, 1, 1e6));
    CHECK_FALSE(is_monotone_on(CurveFamily::Arctan, {-1e-5, 2, 3}, 1, 1e6));
    CHECK(is_monotone_on(CurveFamily::Logarithmic, {2, 1, 0}, 1, 1e6));
    CHECK_FALSE(is_monotone_on(CurveFamily::Logarithmic, {-2, 1, 0}, 1, 1e6));
    CHECK(is_monotone_on(CurveFamily::AlgebraicRoot, {0.01, 1.5, 0}, 1, 1e6));
    // Logarithmic with an invalid left edge propagates the domain error.
    CHECK_THROWS_AS(is_monotone_on(CurveFamily::Logarithmic, {1, -10, 0}, 1, 1e6),
                    DomainError);
}

TEST_CASE("inverse_solve examples") {
    CHECK(inverse_solve(CurveFamily::PowerLaw, {2, 0.5, 1}, 21.0, 1, 1000000000) == 100);
    CHECK_THROWS_AS(
        inverse_solve(CurveFamily::Arctan, {1, 0, 0}, 101.0, 1, 1000000000),
        UnreachableError);
    CHECK_THROWS_AS(
        inverse_solve(CurveFamily::PowerLaw, {-1, 0.5, 0}, -3.0, 1, 1000),
        NotMonotoneError);

    // The stated oracle for this value is a scan, not the closed form.
    const auto scanned = testutil::scan_first_crossing(
        CurveFamily::Logarithmic, {10, 1, 0}, 23.02585093, 1, 1000000);
    REQUIRE(scanned.has_value());
    CHECK(*scanned == 10);
    CHECK(inverse_solve(CurveFamily::Logarithmic, {10, 1, 0}, 23.02585093, 1,
                        1000000) == *scanned);
}

TEST_CASE("inverse_solve equals the brute-force scan on random monotone models") {
    std::mt19937_64 rng(1234);
    int solved = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const CurveFamily family = kAllFamilies[trial % kAllFamilies.size()];
        const Params p = testutil::random_monotone_params(family, rng);
        const std::int64_t n_lo = 1 + static_cast<std::int64_t>(rng() % 50);
        const std::int64_t n_hi = n_lo + 1000 + static_cast<std::int64_t>(rng() % 99000);
        // Pick targets on both sides of the reachable range.
        const double lo_v = evaluate(family, p, static_cast<double>(n_lo));
        const double hi_v = evaluate(family, p, static_cast<double>(n_hi));
        const double target = lo_v + (hi_v - lo_v) * testutil::uniform(rng, -0.2, 1.2);

        const auto scanned = testutil::scan_first_crossing(family, p, target, n_lo, n_hi);
        if (scanned.has_value()) {
            CHECK(inverse_solve(family, p, target, n_lo, n_hi) == *scanned);
            ++solved;
        } else {
            CHECK_THROWS_AS(inverse_solve(family, p, target, n_lo, n_hi),
                            UnreachableError);
        }
    }
    CHECK(solved > 40); // the sweep must exercise the solvable branch
}

TEST_CASE("first-crossing property of inverse_solve") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        const CurveFamily family = kAllFamilies[trial % kAllFamilies.size()];
        const Params p = testutil::random_monotone_params(family, rng);
        const std::int64_t n_star = 10 + static_cast<std::int64_t>(rng() % 5000);
        const double target = evaluate(family, p, static_cast<double>(n_star));
        const std::int64_t found = inverse_solve(family, p, target, 1, 100000);
        CHECK(found <= n_star);
        CHECK(evaluate(family, p, static_cast<double>(found)) >= target);
        if (found > 1) {
            CHECK(evaluate(family, p, static_cast<double>(found - 1)) < target);
        }
    }
}

TEST_CASE("initial parameters are 1 for product terms, 0 for the bias") {
    for (CurveFamily family : kAllFamilies) {
        const Params p = initial_params(family);
        CHECK(p.theta1 == 1.0);
        CHECK(p.theta2 == 1.0);
        CHECK(p.theta3 == 0.0);
    }
}

TEST_CASE("family names round-trip") {
    for (CurveFamily family : kAllFamilies) {
        CHECK(family_from_name(family_name(family)) == family);
    }
    CHECK_THROWS_AS(family_from_name("parabola"), InvalidDataError);
}
