#include <catch_amalgamated.hpp>

#include "support/generators.hpp"

using namespace robustcs;
using Catch::Matchers::WithinAbs;

namespace {

const Payoffs a1{1, 2}, b1{0, 4};

MonotoneProblem p1() { return validate_problem(StateGrid({0, 1}), {{"a", a1}, {"b", b1}}); }

PreferenceFunctional example_variational() {
    return make_variational({Belief({1, 0}), Belief({0, 1}), Belief({0.5, 0.5})}, {1, 1, 0});
}

} // namespace

TEST_CASE("dominates_mixture examples") {
    const auto l1 = dominates_mixture(b1, a1, {-1, 4});
    REQUIRE(l1);
    CHECK_THAT(*l1, WithinAbs(0.25, 1e-15));
    const auto l2 = dominates_mixture({1, 3}, a1, {-1, 4});
    REQUIRE(l2);
    CHECK_THAT(*l2, WithinAbs(0.75, 1e-15));
    CHECK_FALSE(dominates_mixture(a1, a1, a1));
}

TEST_CASE("made_commonly_steeper examples") {
    CHECK(made_commonly_steeper(a1, b1, {1, 3}, {-1, 4}));
    CHECK(made_commonly_steeper(a1, b1, a1, b1));
    CHECK_FALSE(made_commonly_steeper(a1, b1, {1, 3}, {0.5, 4}));
}

TEST_CASE("made_weakly_commonly_steeper examples") {
    CHECK(made_weakly_commonly_steeper(a1, b1, {1, 3}, {-1, 4}));
    CHECK(made_weakly_commonly_steeper(a1, b1, a1, b1));
    CHECK_FALSE(made_weakly_commonly_steeper(a1, b1, {1, 3}, {0.5, 4}));
}

TEST_CASE("commonly steeper implies weakly commonly steeper") {
    gen::Rng rng(61);
    int strict = 0;
    for (int k = 0; k < 2000; ++k) {
        const auto p = gen::random_binary(rng);
        const auto t = gen::coin(rng) ? gen::random_transformation(rng, p, 0.5)
                                      : gen::commonly_transformation(rng, p).value_or(identity_transformation(p));
        if (!made_commonly_steeper(t.pre(0), t.pre(1), t.post(0), t.post(1))) continue;
        ++strict;
        CHECK(made_weakly_commonly_steeper(t.pre(0), t.pre(1), t.post(0), t.post(1)));
    }
    CHECK(strict > 100);
}

TEST_CASE("evaluate examples") {
    const auto var = example_variational();
    CHECK_THAT(evaluate(var, a1), WithinAbs(1.5, 1e-15));
    CHECK_THAT(evaluate(var, Payoffs{2, 3}), WithinAbs(2.5, 1e-15));

    const auto smooth = make_smooth_ambiguity({Belief({1, 0}), Belief({0, 1})}, {0.5, 0.5});
    CHECK_THAT(evaluate(smooth, a1), WithinAbs(1.5, 1e-15));

    gen::Rng rng(62);
    for (int k = 0; k < 100; ++k) {
        const std::size_t n = gen::pick(rng, 2, 5);
        const Belief mu = gen::random_belief(rng, n);
        const auto u = gen::random_concave(rng, -5, 5);
        Payoffs x(n);
        for (double& v : x) v = gen::uniform(rng, -5, 5);
        CHECK(evaluate(make_eu(mu, u), x) == expected_utility(x, mu, u));
    }
}

TEST_CASE("multiplier preferences are variational with a divergence cost") {
    const auto grid = simplex_grid(2, 0.1).beliefs;
    const auto f = make_multiplier(grid, Belief({0.5, 0.5}), 2.0);
    CHECK(f.kind == FunctionalKind::Variational);
    CHECK(f.label == "multiplier");
    // The reference belief carries no cost, so the value never exceeds its expectation.
    CHECK(evaluate(f, a1) <= 1.5 + 1e-12);
    CHECK(evaluate(f, Payoffs{3, 3}) == 3.0);
}

TEST_CASE("regularity probe") {
    CHECK(regularity_probe(example_variational(), 1, 500, 2).passed());
    CHECK(regularity_probe(make_smooth_ambiguity({Belief({1, 0}), Belief({0, 1})}, {0.5, 0.5}), 2, 500, 2).passed());

    const auto bad = regularity_probe(make_custom([](const Payoffs& x) { return -x[1]; }), 3, 50, 2);
    CHECK(bad.complete_and_transitive);
    REQUIRE_FALSE(bad.passed());
    CHECK(bad.violations.front().property == "strong-monotonicity");
}

TEST_CASE("verify_reduction_regular examples") {
    const auto p = p1();
    const auto t = validate_transformation(p, {{1, 3}, {-1, 4}});
    const auto r = verify_reduction_regular(t, example_variational());
    CHECK_FALSE(r.verdict.refuted());
    CHECK(r.commonly_all);
    CHECK(r.weakly_all);

    CHECK_FALSE(verify_reduction_regular(identity_transformation(p), example_variational()).verdict.refuted());

    const auto c1 = validate_transformation(p, {{1, 3}, {0.5, 4}});
    const auto search = binary_necessity_counterexample(a1, b1, {1, 3}, {0.5, 4});
    REQUIRE(search.witness);
    REQUIRE(search.witness->proof_case == 1);
    const auto eu = make_eu(search.witness->belief, search.witness->utility.to_piecewise());
    const auto v = verify_reduction_regular(c1, eu);
    CHECK(v.verdict.refuted());
    CHECK_FALSE(v.commonly_all);
}

TEST_CASE("no refutation where every pair is made commonly steeper") {
    gen::Rng rng(63);
    int instances = 0;
    while (instances < 40) {
        const std::size_t n = gen::pick(rng, 2, 3);
        const auto p = gen::random_problem(rng, gen::pick(rng, 2, 4), n);
        const auto t = gen::commonly_transformation(rng, p);
        if (!t) continue;
        ++instances;
        for (int k = 0; k < 10; ++k) {
            CHECK_FALSE(verify_reduction_regular(*t, gen::random_variational(rng, n)).verdict.refuted());
            CHECK_FALSE(verify_reduction_regular(*t, gen::random_smooth(rng, n)).verdict.refuted());
        }
    }
}

TEST_CASE("no refutation where every pair is made weakly commonly steeper") {
    gen::Rng rng(64);
    int instances = 0;
    while (instances < 40) {
        const std::size_t n = gen::pick(rng, 2, 3);
        const auto p = gen::random_problem(rng, gen::pick(rng, 2, 4), n);
        const auto t = gen::random_transformation(rng, p, 0.3);
        if (!pairwise_weakly_commonly_steeper(t)) continue;
        ++instances;
        for (int k = 0; k < 10; ++k) {
            CHECK_FALSE(verify_reduction_regular(t, make_eu(gen::random_belief(rng, n), gen::random_concave(rng, -6, 6)))
                            .verdict.refuted());
            CHECK_FALSE(verify_reduction_regular(t, gen::random_variational(rng, n)).verdict.refuted());
        }
    }
}

TEST_CASE("variational evaluation is concave in the act") {
    gen::Rng rng(65);
    for (int k = 0; k < 300; ++k) {
        const std::size_t n = gen::pick(rng, 2, 3);
        const auto f = gen::random_variational(rng, n);
        Payoffs a(n), b(n), mix(n);
        const double lam = gen::uniform(rng, 0, 1);
        for (std::size_t s = 0; s < n; ++s) {
            a[s] = gen::uniform(rng, -5, 5);
            b[s] = gen::uniform(rng, -5, 5);
            mix[s] = lam * a[s] + (1 - lam) * b[s];
        }
        CHECK(evaluate(f, mix) >= lam * evaluate(f, a) + (1 - lam) * evaluate(f, b) - 1e-9);
    }
}
