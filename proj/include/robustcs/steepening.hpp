#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "robustcs/core.hpp"

namespace robustcs {

/// States where a is strictly better (A), b strictly better (B), and ties (C).
struct StatePartition {
    std::vector<std::size_t> a_states;
    std::vector<std::size_t> b_states;
    std::vector<std::size_t> c_states;
};

/// Requires b ▷ a; the partition is by the exact sign of a_θ − b_θ.
inline StatePartition partition_states(const Payoffs& a, const Payoffs& b) {
    detail::require(a.size() == b.size(), ErrorKind::DimensionMismatch, "action lengths differ");
    detail::require(a != b && single_crosses(b, a), ErrorKind::SingleCrossingViolation,
                    "partition_states expects b to single-cross a from below");
    StatePartition p;
    for (std::size_t s = 0; s < a.size(); ++s) {
        if (a[s] > b[s])
            p.a_states.push_back(s);
        else if (a[s] < b[s])
            p.b_states.push_back(s);
        else
            p.c_states.push_back(s);
    }
    return p;
}

enum class SteepFailure { None, LowStateRise, HighStateDrop, SuperActuarialFails, DegenerateDenominator };

inline const char* to_string(SteepFailure f) {
    switch (f) {
    case SteepFailure::None: return "None";
    case SteepFailure::LowStateRise: return "LowStateRise";
    case SteepFailure::HighStateDrop: return "HighStateDrop";
    case SteepFailure::SuperActuarialFails: return "SuperActuarialFails";
    case SteepFailure::DegenerateDenominator: return "DegenerateDenominator";
    }
    return "Unknown";
}

struct SuperActuarialResult {
    bool holds = false;
    double lhs = 0.0;
    double rhs = 0.0;
    SteepFailure reason = SteepFailure::None;

    double slack() const { return lhs - rhs; }
};

/**
 * Super-actuarial improvement of a versus b at θ ∈ A, θ' ∈ B:
 *
 *   (min{â_θ, a_θ} − b̂_θ) / (a_θ − b_θ)  ≥  (b̂_θ' − â_θ') / (min{b̂_θ', b_θ'} − a_θ')
 *
 * A nonpositive right-hand denominator is reported as DegenerateDenominator.
 */
inline SuperActuarialResult super_actuarial_check(const Payoffs& a, const Payoffs& b, const Payoffs& ah,
                                                  const Payoffs& bh, std::size_t th, std::size_t thp,
                                                  double eps = kEps) {
    detail::require(a[th] > b[th] && b[thp] > a[thp], ErrorKind::PreconditionViolated,
                    "super-actuarial check needs θ ∈ A and θ' ∈ B");
    SuperActuarialResult r;
    const double rhs_den = std::min(bh[thp], b[thp]) - a[thp];
    if (!(rhs_den > 0.0)) {
        r.reason = SteepFailure::DegenerateDenominator;
        r.lhs = (std::min(ah[th], a[th]) - bh[th]) / (a[th] - b[th]);
        r.rhs = std::numeric_limits<double>::infinity();
        return r;
    }
    r.lhs = (std::min(ah[th], a[th]) - bh[th]) / (a[th] - b[th]);
    r.rhs = (bh[thp] - ah[thp]) / rhs_den;
    r.holds = approx_geq(r.lhs, r.rhs, eps);
    if (!r.holds) r.reason = SteepFailure::SuperActuarialFails;
    return r;
}

inline bool super_actuarial_improvement(const Payoffs& a, const Payoffs& b, const Payoffs& ah, const Payoffs& bh,
                                        std::size_t th, std::size_t thp, double eps = kEps) {
    return super_actuarial_check(a, b, ah, bh, th, thp, eps).holds;
}

struct SteeperReport {
    bool holds = true;
    /// First failing (θ, θ') in lexicographic order, with its reason.
    std::optional<std::pair<std::size_t, std::size_t>> failing_pair;
    SteepFailure reason = SteepFailure::None;
    /// Smallest lhs − rhs of the super-actuarial inequality over A × B.
    double min_slack = std::numeric_limits<double>::infinity();
};

/// All three made-steeper conditions over every (θ, θ') ∈ A × B. States in C are unconstrained.
inline SteeperReport made_steeper_report(const Payoffs& a, const Payoffs& b, const Payoffs& ah, const Payoffs& bh,
                                         double eps = kEps) {
    const StatePartition part = partition_states(a, b);
    SteeperReport rep;
    auto fail = [&](std::size_t th, std::size_t thp, SteepFailure why) {
        if (rep.holds) {
            rep.holds = false;
            rep.failing_pair = {th, thp};
            rep.reason = why;
        }
    };
    for (std::size_t th : part.a_states)
        for (std::size_t thp : part.b_states) {
            if (!approx_leq(bh[th], b[th], eps)) fail(th, thp, SteepFailure::LowStateRise);
            if (!approx_geq(ah[thp], a[thp], eps)) fail(th, thp, SteepFailure::HighStateDrop);
            const auto sai = super_actuarial_check(a, b, ah, bh, th, thp, eps);
            rep.min_slack = std::min(rep.min_slack, sai.slack());
            if (!sai.holds) fail(th, thp, sai.reason);
        }
    return rep;
}

inline bool made_steeper(const Payoffs& a, const Payoffs& b, const Payoffs& ah, const Payoffs& bh,
                         double eps = kEps) {
    return made_steeper_report(a, b, ah, bh, eps).holds;
}

struct PairReport {
    std::size_t lower;
    std::size_t upper;
    SteeperReport report;
};

/// made_steeper for every ordered pair a ◁ b of the menu.
inline std::vector<PairReport> pairwise_steeper_reports(const Transformation& t, double eps = kEps) {
    std::vector<PairReport> out;
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
            out.push_back({i, j, made_steeper_report(t.pre(i), t.pre(j), t.post(i), t.post(j), eps)});
    return out;
}

inline bool pairwise_steeper_all(const Transformation& t, double eps = kEps) {
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
            if (!made_steeper(t.pre(i), t.pre(j), t.post(i), t.post(j), eps)) return false;
    return true;
}

} // namespace robustcs
