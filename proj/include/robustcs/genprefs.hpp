#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "robustcs/core.hpp"
#include "robustcs/steepening.hpp"

namespace robustcs {

namespace detail {

/// Feasible λ set for a family of linear constraints, starting from [lo, hi].
struct LambdaInterval {
    double lo = 0.0;
    double hi = 1.0;
    bool lo_open = false;
    bool hi_open = false;
    bool empty = false;

    void lower(double v, bool open) {
        if (v > lo || (v == lo && open)) {
            lo = v;
            lo_open = open;
        }
    }
    void upper(double v, bool open) {
        if (v < hi || (v == hi && open)) {
            hi = v;
            hi_open = open;
        }
    }
    bool nonempty() const {
        if (empty) return false;
        if (lo_open || hi_open) return lo < hi;
        return lo <= hi;
    }
    double midpoint() const { return 0.5 * (lo + hi); }
};

/**
 * λ with x_θ (>|≥) λ a_θ + (1 − λ) b̂_θ for every θ. `slack` widens the weak
 * version by ε.
 */
inline LambdaInterval mixture_interval(const Payoffs& x, const Payoffs& a, const Payoffs& bh, bool strict,
                                       double slack) {
    require(x.size() == a.size() && a.size() == bh.size(), ErrorKind::DimensionMismatch,
            "mixture vectors differ in length");
    LambdaInterval iv;
    for (std::size_t s = 0; s < x.size(); ++s) {
        const double d = a[s] - bh[s];
        const double r = x[s] - bh[s] + (strict ? 0.0 : slack);
        if (d > 0.0)
            iv.upper(r / d, strict);
        else if (d < 0.0)
            iv.lower(r / d, strict);
        else if (strict ? !(r > 0.0) : !(r >= 0.0))
            iv.empty = true;
    }
    return iv;
}

} // namespace detail

/// λ ∈ [0,1] such that x strictly dominates λa + (1 − λ)b̂ in every state, if any.
inline std::optional<double> dominates_mixture(const Payoffs& x, const Payoffs& a, const Payoffs& bh) {
    const auto iv = detail::mixture_interval(x, a, bh, true, 0.0);
    if (!iv.nonempty()) return std::nullopt;
    return iv.midpoint();
}

inline bool made_commonly_steeper(const Payoffs& a, const Payoffs& b, const Payoffs& ah, const Payoffs& bh) {
    const bool b_side = b == bh || dominates_mixture(b, a, bh).has_value();
    const bool a_side = ah == a || dominates_mixture(ah, a, bh).has_value();
    return b_side && a_side;
}

/// b ≥ λa + (1 − λ)b̂ for some λ ∈ [0,1) and â ≥ γa + (1 − γ)b̂ for some γ ∈ [0,1].
inline bool made_weakly_commonly_steeper(const Payoffs& a, const Payoffs& b, const Payoffs& ah, const Payoffs& bh,
                                         double eps = kEps) {
    auto lam = detail::mixture_interval(b, a, bh, false, eps);
    lam.upper(1.0, true);
    const auto gam = detail::mixture_interval(ah, a, bh, false, eps);
    return lam.nonempty() && gam.nonempty();
}

inline bool pairwise_commonly_steeper(const Transformation& t) {
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
            if (!made_commonly_steeper(t.pre(i), t.pre(j), t.post(i), t.post(j))) return false;
    return true;
}

inline bool pairwise_weakly_commonly_steeper(const Transformation& t, double eps = kEps) {
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
            if (!made_weakly_commonly_steeper(t.pre(i), t.pre(j), t.post(i), t.post(j), eps)) return false;
    return true;
}

enum class FunctionalKind { EU, Variational, SmoothAmbiguity, Custom };

inline const char* to_string(FunctionalKind k) {
    switch (k) {
    case FunctionalKind::EU: return "eu";
    case FunctionalKind::Variational: return "variational";
    case FunctionalKind::SmoothAmbiguity: return "smooth";
    case FunctionalKind::Custom: return "custom";
    }
    return "unknown";
}

/**
 * Preference over state-contingent payoffs.
 *
 *   EU:              beliefs = {μ}
 *   Variational:     beliefs = grid, weights = cost c(p) per grid point
 *   SmoothAmbiguity: beliefs = support of the second-order prior, weights = π
 *   Custom:          `custom` maps a payoff vector to its value
 */
struct PreferenceFunctional {
    FunctionalKind kind = FunctionalKind::EU;
    PiecewiseLinearUtility u = PiecewiseLinearUtility::identity();
    std::vector<Belief> beliefs;
    std::vector<double> weights;
    PiecewiseLinearUtility phi = PiecewiseLinearUtility::identity();
    std::function<double(const Payoffs&)> custom;
    std::string label;
};

inline PreferenceFunctional make_eu(Belief mu, PiecewiseLinearUtility u = PiecewiseLinearUtility::identity()) {
    PreferenceFunctional f;
    f.kind = FunctionalKind::EU;
    f.u = std::move(u);
    f.beliefs = {std::move(mu)};
    f.label = "eu";
    return f;
}

/// The cost table is taken to be convex; only nonnegativity and shape are checked.
inline PreferenceFunctional make_variational(std::vector<Belief> grid, std::vector<double> cost,
                                             PiecewiseLinearUtility u = PiecewiseLinearUtility::identity()) {
    detail::require(!grid.empty(), ErrorKind::EmptySet, "variational grid is empty");
    detail::require(grid.size() == cost.size(), ErrorKind::DimensionMismatch, "one cost per grid belief");
    for (double c : cost)
        detail::require(std::isfinite(c) && c >= 0.0, ErrorKind::InvalidParameter, "costs must be finite and >= 0");
    for (const auto& p : grid)
        detail::require(p.size() == grid.front().size(), ErrorKind::DimensionMismatch, "grid beliefs differ in size");
    PreferenceFunctional f;
    f.kind = FunctionalKind::Variational;
    f.u = std::move(u);
    f.beliefs = std::move(grid);
    f.weights = std::move(cost);
    f.label = "variational";
    return f;
}

/// Variational with c(p) = θ · KL(p ‖ q); q must have full support.
inline PreferenceFunctional make_multiplier(std::vector<Belief> grid, const Belief& q, double theta,
                                            PiecewiseLinearUtility u = PiecewiseLinearUtility::identity()) {
    detail::require(theta > 0.0 && std::isfinite(theta), ErrorKind::InvalidParameter, "theta must be positive");
    for (std::size_t s = 0; s < q.size(); ++s)
        detail::require(q[s] > 0.0, ErrorKind::InvalidBelief, "reference belief needs full support");
    std::vector<double> cost;
    for (const auto& p : grid) {
        detail::require(p.size() == q.size(), ErrorKind::DimensionMismatch, "grid and reference differ in size");
        double kl = 0.0;
        for (std::size_t s = 0; s < p.size(); ++s)
            if (p[s] > 0.0) kl += p[s] * std::log(p[s] / q[s]);
        cost.push_back(theta * std::max(0.0, kl));
    }
    auto f = make_variational(std::move(grid), std::move(cost), std::move(u));
    f.label = "multiplier";
    return f;
}

inline PreferenceFunctional make_smooth_ambiguity(std::vector<Belief> support, std::vector<double> prior,
                                                  PiecewiseLinearUtility u = PiecewiseLinearUtility::identity(),
                                                  PiecewiseLinearUtility phi = PiecewiseLinearUtility::identity()) {
    detail::require(!support.empty(), ErrorKind::EmptySet, "second-order prior has empty support");
    detail::require(support.size() == prior.size(), ErrorKind::DimensionMismatch, "one prior weight per belief");
    double total = 0.0;
    for (double w : prior) {
        detail::require(std::isfinite(w) && w >= 0.0, ErrorKind::InvalidParameter, "prior weights must be >= 0");
        total += w;
    }
    detail::require(std::abs(total - 1.0) <= 1e-12, ErrorKind::InvalidParameter, "prior must sum to 1");
    PreferenceFunctional f;
    f.kind = FunctionalKind::SmoothAmbiguity;
    f.u = std::move(u);
    f.phi = std::move(phi);
    f.beliefs = std::move(support);
    f.weights = std::move(prior);
    f.label = "smooth";
    return f;
}

inline PreferenceFunctional make_custom(std::function<double(const Payoffs&)> fn, std::string label = "custom") {
    PreferenceFunctional f;
    f.kind = FunctionalKind::Custom;
    f.custom = std::move(fn);
    f.label = std::move(label);
    return f;
}

inline double evaluate(const PreferenceFunctional& f, const Payoffs& x) {
    switch (f.kind) {
    case FunctionalKind::EU:
        return expected_utility(x, f.beliefs.front(), f.u);
    case FunctionalKind::Variational: {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < f.beliefs.size(); ++k)
            best = std::min(best, expected_utility(x, f.beliefs[k], f.u) + f.weights[k]);
        return best;
    }
    case FunctionalKind::SmoothAmbiguity: {
        double total = 0.0;
        for (std::size_t k = 0; k < f.beliefs.size(); ++k)
            total += f.weights[k] * f.phi(expected_utility(x, f.beliefs[k], f.u));
        return total;
    }
    case FunctionalKind::Custom:
        detail::require(static_cast<bool>(f.custom), ErrorKind::InvalidParameter, "custom functional has no body");
        return f.custom(x);
    }
    return 0.0;
}

inline double evaluate(const PreferenceFunctional& f, const ActionPayoffs& a) { return evaluate(f, a.payoffs); }

struct RegularityViolation {
    std::size_t trial;
    /// "strong-monotonicity" or "convexity".
    std::string property;
    Payoffs a;
    Payoffs b;
    double lambda;
    double value_a;
    double value_b;
    double value_mix;
};

struct RegularityReport {
    std::size_t trials = 0;
    bool complete_and_transitive = true;
    std::vector<RegularityViolation> violations;

    bool passed() const { return violations.empty(); }
};

/// Random trials of strong monotonicity and convexity on payoffs in [-5, 5]^n.
inline RegularityReport regularity_probe(const PreferenceFunctional& f, std::uint64_t seed, std::size_t n_trials,
                                         std::size_t n_states) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pay(-5.0, 5.0);
    std::uniform_real_distribution<double> bump(0.01, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    RegularityReport rep;
    rep.trials = n_trials;
    for (std::size_t k = 0; k < n_trials; ++k) {
        Payoffs b(n_states), a(n_states), c(n_states), mix(n_states);
        for (std::size_t s = 0; s < n_states; ++s) {
            b[s] = pay(rng);
            a[s] = b[s] + bump(rng);
            c[s] = pay(rng);
        }
        const double lambda = unit(rng);
        const double va = evaluate(f, a), vb = evaluate(f, b);
        if (!(va > vb)) rep.violations.push_back({k, "strong-monotonicity", a, b, lambda, va, vb, vb});

        // Convexity: if c ⪰ b then λc + (1 − λ)b ⪰ b.
        for (std::size_t s = 0; s < n_states; ++s) mix[s] = lambda * c[s] + (1.0 - lambda) * b[s];
        const double vc = evaluate(f, c), vm = evaluate(f, mix);
        if (vc >= vb && !approx_geq(vm, vb, kEps)) rep.violations.push_back({k, "convexity", c, b, lambda, vc, vb, vm});
    }
    return rep;
}

struct RegularVerdict {
    Verdict verdict;
    bool commonly_all = false;
    bool weakly_all = false;
};

/// Direct evaluation of the menu before and after, paired with which sufficient condition held.
inline RegularVerdict verify_reduction_regular(const Transformation& t, const PreferenceFunctional& f,
                                               double tie_tol = kTieTol) {
    std::vector<double> before, after;
    for (std::size_t i = 0; i < t.size(); ++i) {
        before.push_back(evaluate(f, t.pre(i)));
        after.push_back(evaluate(f, t.post(i)));
    }
    RegularVerdict out;
    out.commonly_all = pairwise_commonly_steeper(t);
    out.weakly_all = pairwise_weakly_commonly_steeper(t);
    ActionSet pre = argmax_set(before, tie_tol);
    ActionSet post = argmax_set(after, tie_tol);
    if (!strong_set_order_dominates(pre, post)) {
        out.verdict.status = VerdictStatus::Refuted;
        out.verdict.witness = Witness{std::nullopt, std::nullopt, std::move(pre), std::move(post)};
    } else {
        out.verdict.note = std::string("holds under the ") + f.label + " functional";
    }
    return out;
}

} // namespace robustcs
