#include <catch_amalgamated.hpp>

#include "support/generators.hpp"

using namespace robustcs;
using Catch::Matchers::WithinAbs;

namespace {

const Payoffs a1{1, 2}, b1{0, 4};

MonotoneProblem chain3() {
    return validate_problem(StateGrid({0, 1}), {{"x", {2, 3}}, {"y", {1, 5}}, {"z", {0, 6}}});
}

CounterexampleWitness binary_witness(const Payoffs& ah, const Payoffs& bh) {
    const auto s = binary_necessity_counterexample(a1, b1, ah, bh);
    REQUIRE(s.witness);
    CHECK(replay_counterexample({a1, b1}, {ah, bh}, *s.witness));
    return *s.witness;
}

} // namespace

TEST_CASE("relevant_set examples") {
    CHECK(relevant_set({{2, 3}, {1, 5}, {0, 6}}, 0, 1).actions == std::vector<std::size_t>{0, 1, 2});
    CHECK(relevant_set({{2, 3}, {1, 4}, {1, 5}, {0, 6}}, 0, 1).actions == std::vector<std::size_t>{0, 2, 3});
    CHECK(relevant_set({{2, 3}}, 0, 1).actions == std::vector<std::size_t>{0});
    CHECK_THROWS_AS(relevant_set({{2, 3}}, 1, 0), Error);
}

TEST_CASE("relevantly_steeper examples") {
    const auto p = chain3();
    CHECK(relevantly_steeper(validate_transformation(p, {{2, 3.5}, {0.5, 5.5}, {0, 6.5}})));
    const auto bad = validate_transformation(p, {{2, 3.5}, {1.2, 5}, {0, 6.5}});
    CHECK_FALSE(relevantly_steeper(bad));
    const auto v = relevance_violations(bad);
    REQUIRE(v.size() == 1u);
    CHECK(v[0].action == 1u);
    CHECK(v[0].kind == RelevanceFailure::LowStateRise);
    CHECK(relevantly_steeper(identity_transformation(p)));
}

TEST_CASE("necessity counterexample, low-state rise") {
    const auto t = validate_transformation(chain3(), {{2, 3.5}, {1.2, 5}, {0, 6.5}});
    const auto s = necessity_counterexample(t);
    REQUIRE(s.witness);
    CHECK(s.witness->utility.kink() == 1.2);
    CHECK(s.witness->violated_action == 0u);
    CHECK(s.witness->post_strictly_better == 1u);
    CHECK(s.witness->pre_optimal == ActionSet{0});
    CHECK(replay_counterexample(t, *s.witness));
}

TEST_CASE("necessity counterexample, high-state drop") {
    const auto t = validate_transformation(chain3(), {{2, 2.9}, {0.5, 5.5}, {0, 6.5}});
    const auto s = necessity_counterexample(t);
    REQUIRE(s.witness);
    CHECK(s.witness->utility.kink() == 3.0);
    CHECK(s.witness->violated_action == 0u);
    CHECK(replay_counterexample(t, *s.witness));
}

TEST_CASE("necessity counterexample rejects relevantly steeper input") {
    const auto t = validate_transformation(chain3(), {{2, 3.5}, {0.5, 5.5}, {0, 6.5}});
    try {
        necessity_counterexample(t);
        FAIL("expected PreconditionViolated");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PreconditionViolated);
    }
}

TEST_CASE("binary counterexample cases") {
    const auto c1 = binary_witness({1, 3}, {0.5, 4});
    CHECK(c1.proof_case == 1);
    CHECK(c1.utility.kink() == 0.5);

    const auto c2 = binary_witness({1, 1.5}, {0, 4});
    CHECK(c2.proof_case == 2);
    CHECK(c2.utility.kink() == 2.0);

    const auto c3 = binary_witness({1, 2}, {0, 6});
    CHECK(c3.proof_case == 3);
    CHECK_THAT(c3.mu_pre, WithinAbs(1.0 / 3, 1e-12));
    CHECK_THAT(c3.mu_post, WithinAbs(0.2, 1e-12));
    // Between 1/5 and 1/3, a is chosen before and b after.
    const Belief q = Belief::edge(2, 0, 1, 0.25);
    const auto id = PiecewiseLinearUtility::identity();
    CHECK(expected_utility(a1, q, id) > expected_utility(b1, q, id));
    CHECK(expected_utility(Payoffs{0, 6}, q, id) > expected_utility(Payoffs{1, 2}, q, id));

    const auto c5 = binary_witness({1.5, 2}, {0, 8});
    CHECK(c5.proof_case == 5);
    CHECK(c5.utility.kink() == 1.0);

    const auto c6 = binary_witness({0.5, 2}, {0, 3});
    CHECK(c6.proof_case == 6);
    CHECK(c6.utility.kink() == 3.0);

    CHECK_THROWS_AS(binary_necessity_counterexample(a1, b1, {1, 3}, {-1, 4}), Error);
}

TEST_CASE("the fourth configuration always satisfies the super-actuarial inequality") {
    gen::Rng rng(41);
    for (int k = 0; k < 10000; ++k) {
        const double bth = gen::uniform(rng, -5, 5);
        const double ath = bth + gen::uniform(rng, 0.01, 5);
        const double athp = gen::uniform(rng, -5, 5);
        const double bthp = athp + gen::uniform(rng, 0.01, 5);
        const double ahth = ath + gen::uniform(rng, 0.0, 5) + 1e-6;
        const double bhth = bth - gen::uniform(rng, 0.0, 5);
        const double ahthp = athp + gen::uniform(rng, 0.0, 1) * (bthp - athp) * 0.5;
        const double bhthp = ahthp + gen::uniform(rng, 0.01, 1) * (bthp - ahthp) * 0.99;
        REQUIRE(bthp > bhthp);
        REQUIRE(bhthp > ahthp);
        CHECK(super_actuarial_improvement({ath, athp}, {bth, bthp}, {ahth, ahthp}, {bhth, bhthp}, 0, 1));
    }
}

TEST_CASE("every counterexample replays on random violating instances") {
    gen::Rng rng(42);
    int binary = 0, multi = 0;
    for (int k = 0; k < 1000 && binary + multi < 500; ++k) {
        const std::size_t m = gen::pick(rng, 2, 4), n = gen::pick(rng, 2, 4);
        const auto p = gen::random_problem(rng, m, n);
        const auto t = gen::random_transformation(rng, p, 1.0);
        if (m == 2) {
            if (made_steeper(t.pre(0), t.pre(1), t.post(0), t.post(1))) continue;
            const auto s = binary_necessity_counterexample(t.pre(0), t.pre(1), t.post(0), t.post(1));
            REQUIRE(s.witness);
            CHECK(replay_counterexample(t, *s.witness));
            ++binary;
        } else {
            if (relevantly_steeper(t)) continue;
            const auto s = necessity_counterexample(t);
            REQUIRE(s.witness);
            CHECK(replay_counterexample(t, *s.witness));
            CHECK(s.witness->post_strictly_better > s.witness->violated_action);
            ++multi;
        }
    }
    CHECK(binary + multi == 500);
}

TEST_CASE("made steeper pairwise implies relevantly steeper") {
    gen::Rng rng(43);
    int checked = 0;
    for (int k = 0; k < 300; ++k) {
        const auto p = gen::random_problem(rng, gen::pick(rng, 2, 4), gen::pick(rng, 2, 3));
        const auto t = gen::steeper_transformation(rng, p);
        if (!t) continue;
        ++checked;
        CHECK(relevantly_steeper(*t));
    }
    CHECK(checked > 50);
}
