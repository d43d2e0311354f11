#include <catch_amalgamated.hpp>

#include "support/generators.hpp"

using namespace robustcs;
using Catch::Matchers::WithinAbs;

namespace {

const std::vector<double> kReturns{-1, -0.5, 0, 0.5, 1};

SigmaDistortion piecewise_scale(double neg, double pos) {
    SigmaDistortion s{kReturns, {}};
    for (double r : kReturns) s.values.push_back(r < 0 ? neg * r : pos * r);
    return s;
}

MonotoneProblem chain3() {
    return validate_problem(StateGrid({0, 1}), {{"x", {2, 3}}, {"y", {1, 5}}, {"z", {0, 6}}});
}

} // namespace

TEST_CASE("insurance payoffs") {
    const auto p = insurance_problem({10, 0.3, {0, 5, 10}});
    REQUIRE(p.size() == 3u);
    const auto at = [&](std::size_t level) { return p.action(*p.index_of(coverage_name(level))).payoffs; };
    CHECK(at(0) == Payoffs{-10, 0});
    CHECK_THAT(at(1)[0], WithinAbs(-6.5, 1e-12));
    CHECK_THAT(at(1)[1], WithinAbs(-1.5, 1e-12));
    CHECK(at(2)[0] == at(2)[1]);
    CHECK_THAT(at(2)[0], WithinAbs(-3, 1e-12));
    CHECK_THROWS_AS(insurance_problem({10, 0.3, {0, 5}}), Error);
    CHECK_THROWS_AS(insurance_problem({10, 1.3, {0, 10}}), Error);
}

TEST_CASE("insurance closed form against the exact checks") {
    const std::vector<double> fr{0, 0.5, 1};
    CHECK(insurance_reduces(0.3, 0.2, 10, 12));
    const auto t = insurance_transformation(insurance_spec(10, 0.3, fr), insurance_spec(12, 0.2, fr));
    CHECK(relevantly_steeper(t));
    CHECK(pairwise_steeper_all(t));

    CHECK_FALSE(insurance_reduces(0.3, 0.35, 10, 12));
    const auto u = insurance_transformation(insurance_spec(10, 0.3, fr), insurance_spec(12, 0.35, fr));
    CHECK_FALSE(relevantly_steeper(u));
    CHECK(verify_reduction(u, default_family(u), edge_grid(2, 0.01)).refuted());
}

TEST_CASE("sigma distortions") {
    CHECK(sigma_reduces(piecewise_scale(3, 2)));
    CHECK_FALSE(sigma_reduces(piecewise_scale(2, 3)));
    CHECK(sigma_reduces(piecewise_scale(2, 2)));
    // The identity and a shrink on losses both break σ(r) < r below zero.
    CHECK_THROWS_AS(sigma_reduces(piecewise_scale(1, 1)), Error);
    CHECK_THROWS_AS(sigma_reduces(piecewise_scale(0.5, 2)), Error);
    CHECK_THROWS_AS(sigma_reduces({{-1, 1}, {-2, 2}}), Error);
}

TEST_CASE("sigma closed form matches the exact checks on allocations") {
    const std::vector<double> alloc{0, 0.5, 1, 2};
    for (auto [neg, pos] : std::vector<std::pair<double, double>>{{3, 2}, {2, 2}, {2, 3}, {1.5, 4}}) {
        const auto s = piecewise_scale(neg, pos);
        const auto t = investment_transformation(s, alloc);
        CHECK(pairwise_steeper_all(t) == sigma_reduces(s));
    }
}

TEST_CASE("prisoner's dilemma examples") {
    const PDSpec keep{2, 1, 1, 2, 1, 0};
    CHECK(pd_cooperation_preserved(keep));
    CHECK(pd_made_steeper(keep));

    const PDSpec tempt{2, 1, 1.5, 3, 2, -1};
    CHECK(pd_cooperation_preserved(tempt));
    CHECK(pd_made_steeper(tempt));

    const PDSpec punish_less{2, 1, 1, 2, 1, 0.1};
    CHECK_FALSE(pd_cooperation_preserved(punish_less));
    CHECK_FALSE(pd_made_steeper(punish_less));

    CHECK_THROWS_AS(pd_cooperation_preserved({0.5, 1, 1, 2, 1, 0}), Error);
    CHECK_THROWS_AS(pd_cooperation_preserved({2, 1, 1, 0.5, 1, 0}), Error);
}

TEST_CASE("lower bound transforms") {
    const auto p1 = validate_problem(StateGrid({0, 1}), {{"a", {1, 2}}, {"b", {0, 4}}});
    const auto kinked = lower_bound_transform_check(p1, KinkedUtility(1.5, 0.5));
    CHECK_FALSE(kinked.holds());

    const auto id = lower_bound_transform_check(p1, PiecewiseLinearUtility::identity());
    CHECK(id.holds());
    CHECK(id.ineq1_ok);

    CHECK_FALSE(lower_bound_transform_check(p1, [](double x) { return x + 0.5; }).holds());
}

TEST_CASE("ordinal conditions bring the super-actuarial inequality along") {
    gen::Rng rng(71);
    int held = 0;
    for (int k = 0; k < 500; ++k) {
        const auto p = gen::random_problem(rng, gen::pick(rng, 2, 4), gen::pick(rng, 2, 3));
        const auto r = lower_bound_transform_check(p, KinkedUtility(gen::uniform(rng, -6, 6), gen::uniform(rng, 0.05, 0.95)));
        if (!r.holds()) continue;
        ++held;
        CHECK(r.ineq1_ok);
    }
    CHECK(held > 0);
}

TEST_CASE("two-state adjacent chains") {
    const auto mus = risk_neutral_chain(chain3());
    REQUIRE(mus.size() == 2u);
    CHECK_THAT(mus[0], WithinAbs(1.0 / 3, 1e-15));
    CHECK_THAT(mus[1], WithinAbs(0.5, 1e-15));

    const auto t = validate_transformation(chain3(), {{2, 3.5}, {0.5, 5.5}, {-0.5, 6.5}});
    CHECK(two_state_adjacent_steeper(t));
    CHECK(verify_reduction(t, default_family(t), edge_grid(2, 0.01)).status == VerdictStatus::CertifiedHolds);

    const auto dented = validate_problem(StateGrid({0, 1}), {{"x", {2, 3}}, {"y", {1, 3.5}}, {"z", {0, 6}}});
    try {
        risk_neutral_chain(dented);
        FAIL("expected ConcavityViolation");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ConcavityViolation);
    }
    const auto three = validate_problem(StateGrid({0, 1, 2}), {{"a", {1, 2, 3}}, {"b", {0, 3, 5}}});
    CHECK_THROWS_AS(risk_neutral_chain(three), Error);
}

TEST_CASE("adding a constant to every payoff is never relevantly steeper") {
    gen::Rng rng(72);
    for (int k = 0; k < 100; ++k) {
        const auto p = gen::random_problem(rng, gen::pick(rng, 2, 4), gen::pick(rng, 2, 4));
        for (double c : {-1.0, -0.1, 0.1, 1.0}) {
            PayoffTable post = p.table();
            for (auto& row : post)
                for (double& x : row) x += c;
            CHECK_FALSE(relevantly_steeper(validate_transformation(p, post)));
        }
    }
}
