#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <optional>
#include <vector>

#include "robustcs/core.hpp"
#include "robustcs/steepening.hpp"

namespace robustcs {

/// Geometric ι schedule used by every kinked-utility construction.
inline constexpr std::array<double, 8> kIotaSchedule{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};

/// Actions not weakly dominated when only the states (low, high) count.
struct RelevantSet {
    std::size_t state_low;
    std::size_t state_high;
    /// Indices in ▷ order: payoffs strictly fall at `low` and strictly rise at `high`.
    std::vector<std::size_t> actions;
};

inline RelevantSet relevant_set(const PayoffTable& table, std::size_t low, std::size_t high) {
    detail::require(low < high, ErrorKind::PreconditionViolated, "relevant_set needs low < high");
    RelevantSet rs{low, high, {}};
    for (std::size_t i = 0; i < table.size(); ++i) {
        const double x = table[i][low], y = table[i][high];
        bool keep = true;
        for (std::size_t j = 0; j < table.size() && keep; ++j) {
            if (j == i) continue;
            const double xj = table[j][low], yj = table[j][high];
            if (xj >= x && yj >= y && (xj > x || yj > y)) keep = false;
            // Exact duplicates on this pair of states: keep only the lowest index.
            if (xj == x && yj == y && j < i) keep = false;
        }
        if (keep) rs.actions.push_back(i);
    }
    return rs;
}

enum class RelevanceFailure { LowStateRise, HighStateDrop };

inline const char* to_string(RelevanceFailure f) {
    return f == RelevanceFailure::LowStateRise ? "LowStateRise" : "HighStateDrop";
}

struct RelevanceViolation {
    std::size_t state_low;
    std::size_t state_high;
    std::size_t action;
    /// Position of `action` inside the relevant set.
    std::size_t position;
    RelevanceFailure kind;
};

/// Every violation of relevant steepness, ordered by (state pair, action index, kind).
inline std::vector<RelevanceViolation> relevance_violations(const Transformation& t, double eps = kEps) {
    std::vector<RelevanceViolation> out;
    const PayoffTable pre = t.pre_table();
    const std::size_t n = t.state_count();
    for (std::size_t lo = 0; lo < n; ++lo)
        for (std::size_t hi = lo + 1; hi < n; ++hi) {
            const RelevantSet rs = relevant_set(pre, lo, hi);
            const std::size_t m = rs.actions.size();
            for (std::size_t p = 0; p < m; ++p) {
                const std::size_t k = rs.actions[p];
                if (p > 0 && !approx_leq(t.post(k)[lo], t.pre(k)[lo], eps))
                    out.push_back({lo, hi, k, p, RelevanceFailure::LowStateRise});
                if (p + 1 < m && !approx_geq(t.post(k)[hi], t.pre(k)[hi], eps))
                    out.push_back({lo, hi, k, p, RelevanceFailure::HighStateDrop});
            }
        }
    return out;
}

inline bool relevantly_steeper(const Transformation& t, double eps = kEps) {
    return relevance_violations(t, eps).empty();
}

/**
 * A kinked utility and an edge belief at which `violated_action` is uniquely
 * optimal before the transformation but strictly beaten afterwards by the
 * higher action `post_strictly_better`.
 */
struct CounterexampleWitness {
    KinkedUtility utility;
    Belief belief;
    std::size_t state_low;
    std::size_t state_high;
    ActionSet pre_optimal;
    std::size_t post_strictly_better;
    std::size_t violated_action;
    /// Binary menus: 1..6 per the case analysis. Relevance engine: 1 = low-state rise, 2 = high-state drop.
    int proof_case;
    /// Binary: indifference beliefs before/after. Relevance: upper end of the pre interval and lower end of the post one.
    double mu_pre;
    double mu_post;
};

struct CounterexampleSearch {
    std::optional<CounterexampleWitness> witness;
    bool schedule_exhausted = false;
    /// The violation the construction targeted (relevance engine only).
    std::optional<RelevanceViolation> violation;
};

inline std::vector<double> evaluate_all(const PayoffTable& table, const Belief& belief, const KinkedUtility& u) {
    std::vector<double> v;
    v.reserve(table.size());
    for (const auto& row : table) v.push_back(expected_utility(row, belief, u));
    return v;
}

/// Independent replay through expected utilities and the strong set order.
inline bool replay_counterexample(const PayoffTable& pre, const PayoffTable& post, const CounterexampleWitness& w,
                                  double tol = kEps) {
    if (w.post_strictly_better <= w.violated_action || w.post_strictly_better >= pre.size()) return false;
    const auto before = evaluate_all(pre, w.belief, w.utility);
    const auto after = evaluate_all(post, w.belief, w.utility);
    for (std::size_t k = 0; k < before.size(); ++k)
        if (k != w.violated_action && !(before[w.violated_action] > before[k] + tol)) return false;
    if (!(after[w.post_strictly_better] > after[w.violated_action] + tol)) return false;
    const ActionSet a_star = argmax_set(before, tol);
    const ActionSet a_hat = argmax_set(after, tol);
    return a_star == w.pre_optimal && !strong_set_order_dominates(a_star, a_hat);
}

inline bool replay_counterexample(const Transformation& t, const CounterexampleWitness& w, double tol = kEps) {
    return replay_counterexample(t.pre_table(), t.post_table(), w, tol);
}

namespace detail {

inline double kink_above(const std::vector<const Payoffs*>& rows) {
    double top = -std::numeric_limits<double>::infinity();
    for (const auto* r : rows)
        for (double x : *r) top = std::max(top, x);
    return top + 1.0;
}

} // namespace detail

/**
 * Counterexample for a binary menu {a, b} (b ▷ a) that is not made steeper.
 * The first failing (θ, θ') is classified into the six proof cases and the
 * prescribed kinked utility is tightened along the ι schedule until the
 * pre-transformation indifference belief strictly exceeds the post one.
 */
inline CounterexampleSearch binary_necessity_counterexample(const Payoffs& a, const Payoffs& b, const Payoffs& ah,
                                                            const Payoffs& bh, double eps = kEps) {
    const SteeperReport rep = made_steeper_report(a, b, ah, bh, eps);
    detail::require(!rep.holds, ErrorKind::PreconditionViolated, "the pair is made steeper; no counterexample exists");
    const auto [th, thp] = *rep.failing_pair;

    int proof_case = 0;
    double kink = 0.0;
    bool risk_neutral = false;
    if (!approx_leq(bh[th], b[th], eps)) {
        proof_case = 1;
        kink = std::min(a[th], bh[th]);
    } else if (!approx_geq(ah[thp], a[thp], eps) || rep.reason == SteepFailure::DegenerateDenominator) {
        proof_case = 2;
        kink = a[thp];
    } else if (a[th] >= ah[th] && bh[thp] >= b[thp]) {
        proof_case = 3;
        risk_neutral = true;
    } else if (ah[th] > a[th] && bh[thp] < b[thp]) {
        throw Error(ErrorKind::UnreachableCase4, "super-actuarial inequality failed in the configuration where it must hold");
    } else if (ah[th] > a[th]) {
        proof_case = 5;
        kink = a[th];
    } else {
        proof_case = 6;
        kink = bh[thp];
    }
    if (risk_neutral) kink = detail::kink_above({&a, &b, &ah, &bh});

    const std::size_t n = a.size();
    const PayoffTable pre{a, b};
    const PayoffTable post{ah, bh};
    CounterexampleSearch out;
    for (double iota : kIotaSchedule) {
        const KinkedUtility u(kink, risk_neutral ? 0.5 : iota);
        const auto mu = indifference_belief(a, b, th, thp, u);
        const auto mu_hat = indifference_belief(ah, bh, th, thp, u);
        if (mu && mu_hat && *mu - *mu_hat > 1e-9) {
            CounterexampleWitness w{u, Belief::edge(n, th, thp, 0.5 * (*mu + *mu_hat)), th, thp, {0}, 1, 0,
                                    proof_case, *mu, *mu_hat};
            if (replay_counterexample(pre, post, w, eps)) {
                out.witness = w;
                return out;
            }
        }
        if (risk_neutral) break;
    }
    out.schedule_exhausted = true;
    return out;
}

/**
 * Counterexample for a transformation that does not become relevantly steeper.
 *
 * Targets the first violation. A low-state rise of a^{i+1} uses the kink
 * min{a^i_θ, â^{i+1}_θ}; a high-state drop of a^i uses the kink a^i_θ'. For
 * each ι the pre interval on which a^i is optimal, [μ̲, μ̄], and the post
 * threshold μ̂ beyond which a^{i+1} beats a^i are computed; the witness belief
 * is the midpoint of (max{μ̲, μ̂}, μ̄).
 */
inline CounterexampleSearch necessity_counterexample(const Transformation& t, double eps = kEps) {
    const auto violations = relevance_violations(t, eps);
    detail::require(!violations.empty(), ErrorKind::PreconditionViolated,
                    "transformation becomes relevantly steeper; the construction does not apply");
    const RelevanceViolation v = violations.front();
    const RelevantSet rs = relevant_set(t.pre_table(), v.state_low, v.state_high);
    const auto& r = rs.actions;
    const std::size_t lo = v.state_low, hi = v.state_high;

    // Position of a^i inside the relevant set.
    const std::size_t pi = v.kind == RelevanceFailure::LowStateRise ? v.position - 1 : v.position;
    const std::size_t ai = r[pi];
    const std::size_t ai1 = r[pi + 1];
    const double kink = v.kind == RelevanceFailure::LowStateRise ? std::min(t.pre(ai)[lo], t.post(ai1)[lo])
                                                                  : t.pre(ai)[hi];
    const PayoffTable pre = t.pre_table();
    const PayoffTable& post = t.post_table();

    CounterexampleSearch out;
    out.violation = v;
    for (double iota : kIotaSchedule) {
        const KinkedUtility u(kink, iota);
        double mu_low = 0.0;
        bool ok = true;
        for (std::size_t q = 0; q < pi && ok; ++q) {
            const auto m1 = indifference_belief(pre[r[q]], pre[ai], lo, hi, u);
            const auto m2 = indifference_belief(post[r[q]], post[ai], lo, hi, u);
            if (!m1 || !m2) ok = false;
            else mu_low = std::max({mu_low, *m1, *m2});
        }
        double mu_high = 1.0;
        for (std::size_t q = pi + 1; q < r.size() && ok; ++q) {
            const auto m = indifference_belief(pre[ai], pre[r[q]], lo, hi, u);
            if (!m) ok = false;
            else mu_high = std::min(mu_high, *m);
        }
        const auto mu_hat = indifference_belief(post[ai], post[ai1], lo, hi, u);
        if (!ok || !mu_hat) continue;
        const double left = std::max(mu_low, *mu_hat);
        if (!(mu_high - left > 2e-9)) continue;
        CounterexampleWitness w{u,    Belief::edge(t.state_count(), lo, hi, 0.5 * (left + mu_high)),
                                lo,   hi,
                                {ai}, ai1,
                                ai,   v.kind == RelevanceFailure::LowStateRise ? 1 : 2,
                                mu_high, left};
        if (replay_counterexample(pre, post, w, eps)) {
            out.witness = w;
            return out;
        }
    }
    out.schedule_exhausted = true;
    return out;
}

} // namespace robustcs
