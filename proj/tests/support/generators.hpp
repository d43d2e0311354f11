#pragma once

#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "robustcs/robustcs.hpp"

namespace gen {

using namespace robustcs;
using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline std::vector<double> unit_states(std::size_t n) {
    std::vector<double> s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(static_cast<double>(i));
    return s;
}

/**
 * Menu a^k_s = w_k + t_k v_s + noise with v increasing through zero and w
 * concave in t, so consecutive actions single-cross and none dominates.
 * Retries until validation passes.
 */
inline MonotoneProblem random_problem(Rng& rng, std::size_t m, std::size_t n, double noise = 0.3) {
    for (;;) {
        std::vector<double> v(n);
        v[0] = -uniform(rng, 0.5, 3.0);
        for (std::size_t s = 1; s < n; ++s) v[s] = v[s - 1] + uniform(rng, 0.5, 3.0);
        if (v[n - 1] <= 0.0) v[n - 1] = uniform(rng, 0.5, 3.0);
        const double c = uniform(rng, 0.2, 1.0);
        const double tmax = v[n - 1] / (2.0 * c);
        std::vector<double> ts;
        for (std::size_t k = 0; k < m; ++k) ts.push_back(uniform(rng, 0.05, tmax));
        std::vector<ActionPayoffs> acts;
        for (std::size_t k = 0; k < m; ++k) {
            Payoffs row;
            const double w = -c * ts[k] * ts[k];
            for (std::size_t s = 0; s < n; ++s) row.push_back(w + ts[k] * v[s] + uniform(rng, -noise, noise));
            acts.push_back({"a" + std::to_string(k), std::move(row)});
        }
        try {
            return validate_problem(StateGrid(unit_states(n)), std::move(acts));
        } catch (const Error&) {
        }
    }
}

/// Binary two-state menu {a, b} with b ▷ a.
inline MonotoneProblem random_binary(Rng& rng) { return random_problem(rng, 2, 2, 0.5); }

inline std::optional<Transformation> try_transform(const MonotoneProblem& p, PayoffTable post) {
    try {
        return validate_transformation(p, std::move(post));
    } catch (const Error&) {
        return std::nullopt;
    }
}

/// Independent noise on every payoff, resampled until order preserving.
inline Transformation random_transformation(Rng& rng, const MonotoneProblem& p, double scale = 1.0) {
    for (double sc = scale;; sc *= 0.9) {
        PayoffTable post = p.table();
        for (auto& row : post)
            for (double& x : row) x += uniform(rng, -sc, sc);
        if (auto t = try_transform(p, std::move(post))) return *t;
    }
}

/**
 * Signed perturbation: a cell may only fall where its action is the higher
 * member of some pair with the lower action ahead, and only rise where it is
 * the lower member with the higher action ahead.
 */
inline PayoffTable directional_post(Rng& rng, const MonotoneProblem& p, double scale) {
    const std::size_t m = p.size(), n = p.state_count();
    PayoffTable post = p.table();
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t s = 0; s < n; ++s) {
            bool may_fall = false, may_rise = false, must_fall = false, must_rise = false;
            for (std::size_t j = 0; j < m; ++j) {
                if (j < k && p.action(j).payoffs[s] > p.action(k).payoffs[s]) must_fall = true;
                if (j > k && p.action(j).payoffs[s] > p.action(k).payoffs[s]) must_rise = true;
            }
            may_fall = !must_rise;
            may_rise = !must_fall;
            const double d = coin(rng, 0.25) ? 0.0 : uniform(rng, 0.0, scale);
            if (may_fall && may_rise) post[k][s] += coin(rng) ? d : -d;
            else if (may_fall) post[k][s] -= d;
            else if (may_rise) post[k][s] += d;
        }
    return post;
}

/// Transformation with every pair made steeper (rejection over directional perturbations).
inline std::optional<Transformation> steeper_transformation(Rng& rng, const MonotoneProblem& p, int tries = 400) {
    double scale = 1.0;
    for (int k = 0; k < tries; ++k, scale *= 0.99) {
        if (auto t = try_transform(p, directional_post(rng, p, scale)); t && pairwise_steeper_all(*t)) return t;
    }
    return std::nullopt;
}

inline PiecewiseLinearUtility random_concave(Rng& rng, double lo, double hi) {
    return random_concave_family(rng(), 1, pick(rng, 1, 4), lo, hi).members.front();
}

inline Belief random_belief(Rng& rng, std::size_t n) {
    std::vector<double> w(n);
    double total = 0.0;
    for (double& x : w) total += (x = std::exponential_distribution<double>(1.0)(rng));
    for (double& x : w) x /= total;
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) sum += w[i];
    w[n - 1] = std::max(0.0, 1.0 - sum);
    return Belief(std::move(w));
}

/// Variational preferences with a quadratic cost around a random reference belief.
inline PreferenceFunctional random_variational(Rng& rng, std::size_t n) {
    const auto grid = simplex_grid(n, n == 2 ? 0.1 : 0.25).beliefs;
    const Belief q = random_belief(rng, n);
    const double theta = uniform(rng, 0.1, 3.0);
    std::vector<double> cost;
    for (const auto& p : grid) {
        double d = 0.0;
        for (std::size_t s = 0; s < n; ++s) d += (p[s] - q[s]) * (p[s] - q[s]);
        cost.push_back(theta * d);
    }
    return make_variational(grid, cost, random_concave(rng, -6, 6));
}

inline PreferenceFunctional random_smooth(Rng& rng, std::size_t n) {
    const std::size_t k = pick(rng, 1, 5);
    std::vector<Belief> support;
    for (std::size_t i = 0; i < k; ++i) support.push_back(random_belief(rng, n));
    return make_smooth_ambiguity(support, random_belief(rng, k).weights(), random_concave(rng, -6, 6),
                                 random_concave(rng, -10, 10));
}

/// Raise the lowest action and lower the highest; binary menus may also mix b̂ below a.
inline std::optional<Transformation> commonly_transformation(Rng& rng, const MonotoneProblem& p) {
    const std::size_t m = p.size(), n = p.state_count();
    for (int tries = 0; tries < 200; ++tries) {
        PayoffTable post = p.table();
        const double rise = uniform(rng, 0.0, 0.3), fall = uniform(rng, 0.0, 0.3);
        for (std::size_t s = 0; s < n; ++s) {
            post[0][s] += rise * uniform(rng, 0.5, 1.0);
            post[m - 1][s] -= fall * uniform(rng, 0.5, 1.0);
        }
        if (m == 2 && coin(rng)) {
            // b̂ below a mixture of a and b: b ≫ λa + (1 − λ)b̂.
            const double lam = uniform(rng, 0.0, 0.8);
            for (std::size_t s = 0; s < n; ++s)
                post[1][s] = (p.action(1).payoffs[s] - lam * p.action(0).payoffs[s] + uniform(rng, -0.2, -0.01)) /
                             (1.0 - lam);
        }
        auto t = try_transform(p, post);
        if (t && pairwise_commonly_steeper(*t)) return t;
    }
    return std::nullopt;
}

} // namespace gen
