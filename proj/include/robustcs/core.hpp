#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "robustcs/common.hpp"
#include "robustcs/utility.hpp"

namespace robustcs {

/// Finite, strictly increasing list of states.
class StateGrid {
public:
    explicit StateGrid(std::vector<double> states) : states_(std::move(states)) {
        detail::require(states_.size() >= 2, ErrorKind::InvalidGrid, "at least two states required");
        detail::require(detail::all_finite(states_), ErrorKind::InvalidGrid, "states must be finite");
        for (std::size_t i = 1; i < states_.size(); ++i)
            detail::require(states_[i] > states_[i - 1], ErrorKind::InvalidGrid,
                            "states must be strictly increasing");
    }

    std::size_t size() const { return states_.size(); }
    double operator[](std::size_t i) const { return states_[i]; }
    const std::vector<double>& states() const { return states_; }

    friend bool operator==(const StateGrid&, const StateGrid&) = default;

private:
    std::vector<double> states_;
};

struct ActionPayoffs {
    std::string name;
    Payoffs payoffs;

    friend bool operator==(const ActionPayoffs&, const ActionPayoffs&) = default;
};

/// Probability vector over the state grid.
class Belief {
public:
    explicit Belief(std::vector<double> weights) : weights_(std::move(weights)) {
        detail::require(!weights_.empty(), ErrorKind::InvalidBelief, "empty belief");
        double total = 0.0;
        for (double w : weights_) {
            detail::require(std::isfinite(w) && w >= 0.0, ErrorKind::InvalidBelief,
                            "belief weights must be finite and nonnegative");
            total += w;
        }
        detail::require(std::abs(total - 1.0) <= 1e-12, ErrorKind::InvalidBelief,
                        "belief weights must sum to 1");
    }

    static Belief vertex(std::size_t n, std::size_t k) {
        std::vector<double> w(n, 0.0);
        w.at(k) = 1.0;
        return Belief(std::move(w));
    }

    /// Belief supported on {low, high} with weight `mu_high` on the higher state.
    static Belief edge(std::size_t n, std::size_t low, std::size_t high, double mu_high) {
        detail::require(low < high && high < n, ErrorKind::InvalidBelief, "edge states out of order");
        detail::require(mu_high >= 0.0 && mu_high <= 1.0, ErrorKind::InvalidBelief, "edge weight outside [0,1]");
        std::vector<double> w(n, 0.0);
        w[low] = 1.0 - mu_high;
        w[high] = mu_high;
        return Belief(std::move(w));
    }

    std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    const std::vector<double>& weights() const { return weights_; }

    /// Support states when the belief sits on an edge (exactly two states).
    std::optional<std::pair<std::size_t, std::size_t>> edge_support() const {
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i < weights_.size(); ++i)
            if (weights_[i] > 0.0) support.push_back(i);
        if (support.size() != 2) return std::nullopt;
        return std::make_pair(support[0], support[1]);
    }

    friend bool operator==(const Belief&, const Belief&) = default;

private:
    std::vector<double> weights_;
};

namespace detail {

inline int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

/// True when the sign of b - a never decreases along the grid.
inline bool crosses_from_below(const Payoffs& b, const Payoffs& a) {
    int last = -1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int s = sign_of(b[i] - a[i]);
        if (s < last) return false;
        last = s;
    }
    return true;
}

inline bool weakly_dominates(const Payoffs& b, const Payoffs& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] < a[i]) return false;
    return true;
}

} // namespace detail

/// b single-crosses a from below (b ▷ a). Assumes the pair is not dominated.
inline bool single_crosses(const Payoffs& b, const Payoffs& a) { return detail::crosses_from_below(b, a); }

/**
 * A validated monotone decision problem: actions sorted ascending by the
 * single-crossing order, so index order is the ▷ order.
 */
class MonotoneProblem {
public:
    const StateGrid& grid() const { return grid_; }
    const std::vector<ActionPayoffs>& actions() const { return actions_; }
    const ActionPayoffs& action(std::size_t i) const { return actions_.at(i); }
    std::size_t size() const { return actions_.size(); }
    std::size_t state_count() const { return grid_.size(); }

    PayoffTable table() const {
        PayoffTable t;
        t.reserve(actions_.size());
        for (const auto& a : actions_) t.push_back(a.payoffs);
        return t;
    }

    std::optional<std::size_t> index_of(const std::string& name) const {
        for (std::size_t i = 0; i < actions_.size(); ++i)
            if (actions_[i].name == name) return i;
        return std::nullopt;
    }

private:
    MonotoneProblem(StateGrid grid, std::vector<ActionPayoffs> actions)
        : grid_(std::move(grid)), actions_(std::move(actions)) {}

    friend MonotoneProblem validate_problem(StateGrid grid, std::vector<ActionPayoffs> raw_actions);

    StateGrid grid_;
    std::vector<ActionPayoffs> actions_;
};

/// Checks every problem invariant and returns the menu sorted by ▷.
inline MonotoneProblem validate_problem(StateGrid grid, std::vector<ActionPayoffs> raw_actions) {
    using detail::require;
    require(raw_actions.size() >= 2, ErrorKind::InvalidAction, "at least two actions required");
    const std::size_t n = grid.size();
    for (const auto& a : raw_actions) {
        require(a.payoffs.size() == n, ErrorKind::DimensionMismatch,
                "action '" + a.name + "' has " + std::to_string(a.payoffs.size()) + " payoffs for " +
                    std::to_string(n) + " states");
        require(detail::all_finite(a.payoffs), ErrorKind::InvalidAction, "action '" + a.name + "' has non-finite payoffs");
        for (std::size_t i = 1; i < n; ++i)
            require(a.payoffs[i] >= a.payoffs[i - 1], ErrorKind::NonMonotoneAction,
                    "action '" + a.name + "' decreases between states " + std::to_string(i - 1) + " and " +
                        std::to_string(i));
    }
    for (std::size_t i = 0; i < raw_actions.size(); ++i)
        for (std::size_t j = i + 1; j < raw_actions.size(); ++j) {
            const auto& a = raw_actions[i];
            const auto& b = raw_actions[j];
            require(a.name != b.name, ErrorKind::DuplicateAction, "duplicate action name '" + a.name + "'");
            require(a.payoffs != b.payoffs, ErrorKind::DuplicateAction,
                    "actions '" + a.name + "' and '" + b.name + "' are identical");
            require(!detail::weakly_dominates(a.payoffs, b.payoffs) && !detail::weakly_dominates(b.payoffs, a.payoffs),
                    ErrorKind::DominanceViolation,
                    "one of '" + a.name + "' and '" + b.name + "' state-wise dominates the other");
            require(single_crosses(b.payoffs, a.payoffs) || single_crosses(a.payoffs, b.payoffs),
                    ErrorKind::SingleCrossingViolation,
                    "actions '" + a.name + "' and '" + b.name + "' are not single-crossing comparable");
        }
    // Non-dominated comparable pairs are ordered in exactly one direction, so this is a strict total order.
    std::sort(raw_actions.begin(), raw_actions.end(), [](const ActionPayoffs& a, const ActionPayoffs& b) {
        return a.payoffs != b.payoffs && single_crosses(b.payoffs, a.payoffs);
    });
    return MonotoneProblem(std::move(grid), std::move(raw_actions));
}

/// A monotone, order-preserving transformation of a problem's payoffs.
class Transformation {
public:
    const MonotoneProblem& problem() const { return problem_; }
    std::size_t size() const { return problem_.size(); }
    std::size_t state_count() const { return problem_.state_count(); }
    const Payoffs& pre(std::size_t i) const { return problem_.action(i).payoffs; }
    const Payoffs& post(std::size_t i) const { return post_.at(i); }
    const std::string& name(std::size_t i) const { return problem_.action(i).name; }
    PayoffTable pre_table() const { return problem_.table(); }
    const PayoffTable& post_table() const { return post_; }

private:
    Transformation(MonotoneProblem problem, PayoffTable post) : problem_(std::move(problem)), post_(std::move(post)) {}

    friend Transformation validate_transformation(MonotoneProblem problem, PayoffTable new_payoffs);

    MonotoneProblem problem_;
    PayoffTable post_;
};

namespace detail {

/// x ≥(>) y must carry over to x̂ ≥(>) ŷ. Ties map to ties, strict to strict.
inline bool preserves_ranking(double x, double y, double xh, double yh) {
    return sign_of(x - y) == sign_of(xh - yh);
}

} // namespace detail

/// `new_payoffs` is aligned with problem.actions() (the ▷-sorted order).
inline Transformation validate_transformation(MonotoneProblem problem, PayoffTable new_payoffs) {
    using detail::require;
    const std::size_t m = problem.size();
    const std::size_t n = problem.state_count();
    require(new_payoffs.size() == m, ErrorKind::DimensionMismatch, "post table has wrong number of actions");
    for (std::size_t i = 0; i < m; ++i) {
        require(new_payoffs[i].size() == n, ErrorKind::DimensionMismatch,
                "post payoffs of '" + problem.action(i).name + "' have wrong length");
        require(detail::all_finite(new_payoffs[i]), ErrorKind::InvalidAction,
                "post payoffs of '" + problem.action(i).name + "' are not finite");
    }
    for (std::size_t i = 0; i < m; ++i) {
        const auto& a = problem.action(i).payoffs;
        const auto& ah = new_payoffs[i];
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t s2 = s + 1; s2 < n; ++s2)
                require(detail::preserves_ranking(a[s2], a[s], ah[s2], ah[s]), ErrorKind::MonotoneBreak,
                        "ranking of '" + problem.action(i).name + "' across states " + std::to_string(s) + " and " +
                            std::to_string(s2) + " changes");
    }
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                require(detail::preserves_ranking(problem.action(j).payoffs[s], problem.action(i).payoffs[s],
                                                  new_payoffs[j][s], new_payoffs[i][s]),
                        ErrorKind::OrderFlip,
                        "ranking of '" + problem.action(i).name + "' and '" + problem.action(j).name + "' in state " +
                            std::to_string(s) + " changes");
    return Transformation(std::move(problem), std::move(new_payoffs));
}

inline Transformation identity_transformation(const MonotoneProblem& problem) {
    return validate_transformation(problem, problem.table());
}

template <UtilityFunction U>
double expected_utility(const Payoffs& action, const Belief& belief, const U& u) {
    detail::require(action.size() == belief.size(), ErrorKind::DimensionMismatch,
                    "belief and action dimensions differ");
    double total = 0.0;
    for (std::size_t i = 0; i < action.size(); ++i)
        if (belief[i] != 0.0) total += belief[i] * u(action[i]);
    return total;
}

template <UtilityFunction U>
double expected_utility(const ActionPayoffs& action, const Belief& belief, const U& u) {
    return expected_utility(action.payoffs, belief, u);
}

/// Indices whose expected utility is within tie_tol of the best.
template <UtilityFunction U>
ActionSet optimal_set(const PayoffTable& table, const Belief& belief, const U& u, double tie_tol = kTieTol) {
    detail::require(!table.empty(), ErrorKind::EmptySet, "empty payoff table");
    std::vector<double> values;
    values.reserve(table.size());
    for (const auto& row : table) values.push_back(expected_utility(row, belief, u));
    const double best = *std::max_element(values.begin(), values.end());
    ActionSet out;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] >= best - tie_tol) out.push_back(i);
    return out;
}

/// Same rule over precomputed values.
inline ActionSet argmax_set(const std::vector<double>& values, double tie_tol = kTieTol) {
    detail::require(!values.empty(), ErrorKind::EmptySet, "no values");
    const double best = *std::max_element(values.begin(), values.end());
    ActionSet out;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] >= best - tie_tol) out.push_back(i);
    return out;
}

/// S1 dominates S2: for a in S1 and a' in S2, max{a,a'} ∈ S1 and min{a,a'} ∈ S2.
inline bool strong_set_order_dominates(const ActionSet& s1, const ActionSet& s2) {
    detail::require(!s1.empty() && !s2.empty(), ErrorKind::EmptySet, "strong set order needs nonempty sets");
    auto contains = [](const ActionSet& s, std::size_t x) { return std::find(s.begin(), s.end(), x) != s.end(); };
    for (std::size_t a : s1)
        for (std::size_t ap : s2)
            if (!contains(s1, std::max(a, ap)) || !contains(s2, std::min(a, ap))) return false;
    return true;
}

/**
 * Weight on the high state at which a and b tie on the edge {low, high}:
 * [u(a_low) - u(b_low)] / [u(a_low) - u(b_low) + u(b_high) - u(a_high)].
 * Requires a_low > b_low and b_high > a_high. Empty when the denominator vanishes.
 */
template <UtilityFunction U>
std::optional<double> indifference_belief(const Payoffs& a, const Payoffs& b, std::size_t low, std::size_t high,
                                          const U& u) {
    detail::require(low < a.size() && high < a.size() && a.size() == b.size(), ErrorKind::DimensionMismatch,
                    "state index out of range");
    detail::require(a[low] > b[low] && b[high] > a[high], ErrorKind::PreconditionViolated,
                    "state pair is not in A x B for this action pair");
    const double gain_low = u(a[low]) - u(b[low]);
    const double gain_high = u(b[high]) - u(a[high]);
    const double denom = gain_low + gain_high;
    if (denom == 0.0) return std::nullopt;
    return gain_low / denom;
}

enum class VerdictStatus { CertifiedHolds, Refuted, IndeterminateSearchExhausted };

inline const char* to_string(VerdictStatus s) {
    switch (s) {
    case VerdictStatus::CertifiedHolds: return "CertifiedHolds";
    case VerdictStatus::Refuted: return "Refuted";
    case VerdictStatus::IndeterminateSearchExhausted: return "IndeterminateSearchExhausted";
    }
    return "Unknown";
}

/// A (utility, belief) pair and the optimal sets it produces. Preference-functional
/// witnesses carry only the sets.
struct Witness {
    std::optional<PiecewiseLinearUtility> utility;
    std::optional<Belief> belief;
    ActionSet pre_optimal;
    ActionSet post_optimal;
};

struct Verdict {
    VerdictStatus status = VerdictStatus::CertifiedHolds;
    std::optional<Witness> witness;
    /// Scope of a certificate, e.g. the family/grid sizes it covers.
    std::string note;

    bool refuted() const { return status == VerdictStatus::Refuted; }
};

/// Tie tolerance in money units: scaled by the flattest slope of u.
inline double money_tie_tol(const PiecewiseLinearUtility& u, double tie_tol = kTieTol) {
    return tie_tol * u.slopes().back();
}

/// Re-derives the optimal sets at the witness and checks they violate the strong set order.
inline bool replays(const Transformation& t, const Witness& w, double tie_tol = kTieTol) {
    if (!w.utility || !w.belief) return false;
    const double tol = money_tie_tol(*w.utility, tie_tol);
    auto pre = optimal_set(t.pre_table(), *w.belief, *w.utility, tol);
    auto post = optimal_set(t.post_table(), *w.belief, *w.utility, tol);
    return pre == w.pre_optimal && post == w.post_optimal && !strong_set_order_dominates(pre, post);
}

} // namespace robustcs
