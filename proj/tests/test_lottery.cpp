#include <catch_amalgamated.hpp>

#include "support/generators.hpp"

using namespace robustcs;
using Catch::Matchers::WithinAbs;

TEST_CASE("integrated cdf is piecewise linear") {
    const DiscreteLottery l({{0, 0.25}, {2, 0.75}});
    CHECK(l.integrated_cdf(-1) == 0.0);
    CHECK(l.integrated_cdf(0) == 0.0);
    CHECK_THAT(l.integrated_cdf(2), WithinAbs(0.5, 1e-15));
    CHECK_THAT(l.integrated_cdf(3), WithinAbs(0.5 + 1.0, 1e-15));
}

TEST_CASE("lottery validation") {
    CHECK_THROWS_AS(DiscreteLottery({{0, 0.5}, {1, 0.4}}), Error);
    CHECK_THROWS_AS(DiscreteLottery({{0, -0.5}, {1, 1.5}}), Error);
    CHECK_NOTHROW(DiscreteLottery({{0, 1.0}}));
}

TEST_CASE("sure amount against a spread") {
    // A sure amount against its mean-preserving spread, then a raised sure amount.
    const DiscreteLottery safe({{1, 1.0}}), risky({{0, 0.5}, {2, 0.5}});
    const DiscreteLottery safe_h({{1.5, 1.0}}), risky_h({{0, 0.5}, {2, 0.5}});
    const auto rep = lottery_conditions_report(safe, risky, safe_h, risky_h);
    CHECK(rep.implication_holds);
    CHECK(rep.holds());
    // Shrinking the sure amount below the mean lets a risk-neutral agent switch.
    CHECK_FALSE(check_lottery_conditions(safe_h, risky_h, DiscreteLottery({{0.5, 1.0}}), risky));
}

TEST_CASE("the conditions are invariant to relabelling both pairs identically") {
    gen::Rng rng(31);
    for (int k = 0; k < 100; ++k) {
        const auto p = gen::random_binary(rng);
        const auto t = gen::random_transformation(rng, p, 1.0);
        const Belief mu = gen::random_belief(rng, 2);
        const auto l1 = induced_lottery(t.pre(0), mu), l2 = induced_lottery(t.pre(1), mu);
        CHECK(check_lottery_conditions(l1, l2, l1, l2));
        CHECK(check_lottery_conditions(l2, l1, l2, l1));
    }
}
