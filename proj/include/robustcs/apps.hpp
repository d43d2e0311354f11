#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "robustcs/core.hpp"
#include "robustcs/relevance.hpp"
#include "robustcs/steepening.hpp"

namespace robustcs {

// ---------------------------------------------------------------- insurance

/// Two states: 0 = loss, 1 = no loss. `coverage` is in money, sorted, containing 0 and the loss.
struct InsuranceSpec {
    double loss;
    double price;
    std::vector<double> coverage;
};

inline void validate_insurance(const InsuranceSpec& s) {
    detail::require(std::isfinite(s.loss) && s.loss > 0.0, ErrorKind::InvalidParameter, "loss must be positive");
    detail::require(s.price > 0.0 && s.price < 1.0, ErrorKind::InvalidParameter, "price must lie in (0,1)");
    detail::require(s.coverage.size() >= 2, ErrorKind::InvalidParameter, "coverage grid needs two levels");
    detail::require(std::is_sorted(s.coverage.begin(), s.coverage.end()) &&
                        std::adjacent_find(s.coverage.begin(), s.coverage.end()) == s.coverage.end(),
                    ErrorKind::InvalidParameter, "coverage grid must be strictly increasing");
    detail::require(s.coverage.front() == 0.0 && s.coverage.back() == s.loss, ErrorKind::InvalidParameter,
                    "coverage grid must contain 0 and the loss");
}

inline Payoffs insurance_payoffs(double loss, double price, double coverage) {
    // Written so that full coverage ties exactly across states.
    return {-price * coverage - (loss - coverage), -price * coverage};
}

inline std::string coverage_name(std::size_t level) { return "cover" + std::to_string(level); }

inline MonotoneProblem insurance_problem(const InsuranceSpec& s) {
    validate_insurance(s);
    std::vector<ActionPayoffs> acts;
    for (std::size_t i = 0; i < s.coverage.size(); ++i)
        acts.push_back({coverage_name(i), insurance_payoffs(s.loss, s.price, s.coverage[i])});
    return validate_problem(StateGrid({0.0, 1.0}), std::move(acts));
}

/// The i-th coverage level before maps to the i-th level after; grids must have equal length.
inline Transformation insurance_transformation(const InsuranceSpec& before, const InsuranceSpec& after) {
    validate_insurance(after);
    detail::require(before.coverage.size() == after.coverage.size(), ErrorKind::DimensionMismatch,
                    "coverage grids differ in length");
    MonotoneProblem p = insurance_problem(before);
    PayoffTable post(p.size());
    for (std::size_t i = 0; i < after.coverage.size(); ++i)
        post[*p.index_of(coverage_name(i))] = insurance_payoffs(after.loss, after.price, after.coverage[i]);
    return validate_transformation(std::move(p), std::move(post));
}

/// Coverage levels as fractions of the loss.
inline InsuranceSpec insurance_spec(double loss, double price, const std::vector<double>& fractions) {
    InsuranceSpec s{loss, price, {}};
    for (double f : fractions) s.coverage.push_back(f == 1.0 ? loss : f * loss);
    return s;
}

/// Closed form: cheaper per-unit price and a larger loss.
inline bool insurance_reduces(double p, double p_hat, double loss, double loss_hat) {
    detail::require(p > 0.0 && p < 1.0 && p_hat > 0.0 && p_hat < 1.0, ErrorKind::InvalidParameter,
                    "prices must lie in (0,1)");
    detail::require(loss > 0.0 && loss_hat > 0.0, ErrorKind::InvalidParameter, "losses must be positive");
    return p_hat <= p && loss <= loss_hat;
}

// --------------------------------------------------------------- investment

/// σ sampled on a return grid that contains 0.
struct SigmaDistortion {
    std::vector<double> returns;
    std::vector<double> values;
};

inline void validate_sigma(const SigmaDistortion& s) {
    detail::require(s.returns.size() == s.values.size() && !s.returns.empty(), ErrorKind::DimensionMismatch,
                    "returns and values differ in length");
    bool has_zero = false;
    for (std::size_t i = 0; i < s.returns.size(); ++i) {
        const double r = s.returns[i], v = s.values[i];
        if (i > 0) {
            detail::require(r > s.returns[i - 1], ErrorKind::InvalidParameter, "returns must be strictly increasing");
            detail::require(v > s.values[i - 1], ErrorKind::InvalidParameter, "sigma must be strictly increasing");
        }
        if (r == 0.0) {
            has_zero = true;
            detail::require(v == 0.0, ErrorKind::InvalidParameter, "sigma(0) must be 0");
        }
        if (r < 0.0) detail::require(v < r, ErrorKind::InvalidParameter, "sigma(r) < r required for r < 0");
        if (r > 0.0) detail::require(v > 0.0, ErrorKind::InvalidParameter, "sigma(r) > 0 required for r > 0");
    }
    detail::require(has_zero, ErrorKind::InvalidParameter, "return grid must contain 0");
}

/// min over r− of σ(r−)/r− is at least max over r+ of σ(r+)/r+.
inline bool sigma_reduces(const SigmaDistortion& s) {
    validate_sigma(s);
    double neg = std::numeric_limits<double>::infinity();
    double pos = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.returns.size(); ++i) {
        const double r = s.returns[i];
        if (r < 0.0) neg = std::min(neg, s.values[i] / r);
        if (r > 0.0) pos = std::max(pos, s.values[i] / r);
    }
    return neg >= pos;
}

/// States are the returns; action ρ pays ρr before and ρσ(r) after. Allocations must be distinct and ≥ 0.
inline Transformation investment_transformation(const SigmaDistortion& s, const std::vector<double>& allocations) {
    validate_sigma(s);
    std::vector<ActionPayoffs> acts;
    for (std::size_t k = 0; k < allocations.size(); ++k) {
        const double rho = allocations[k];
        detail::require(rho >= 0.0, ErrorKind::InvalidParameter, "allocations must be nonnegative");
        Payoffs pay;
        for (double r : s.returns) pay.push_back(rho * r);
        acts.push_back({"rho" + std::to_string(k), std::move(pay)});
    }
    MonotoneProblem p = validate_problem(StateGrid(s.returns), std::move(acts));
    PayoffTable post(p.size());
    for (std::size_t k = 0; k < allocations.size(); ++k) {
        Payoffs pay;
        for (double v : s.values) pay.push_back(allocations[k] * v);
        post[*p.index_of("rho" + std::to_string(k))] = std::move(pay);
    }
    return validate_transformation(std::move(p), std::move(post));
}

// ----------------------------------------------------- repeated prisoner's dilemma

/**
 * Stage payoffs normalised so mutual cooperation pays 1 and mutual defection 0
 * before the change. `beta` is the temptation payoff, `gamma` the sucker loss.
 */
struct PDSpec {
    double beta;
    double gamma;
    double alpha_hat;
    double beta_hat;
    double gamma_hat;
    double rho_hat;
};

inline void validate_pd(const PDSpec& s) {
    detail::require(s.beta > 1.0 && s.gamma > 0.0, ErrorKind::InvalidParameter, "need beta > 1 and gamma > 0");
    detail::require(s.beta_hat > s.alpha_hat && s.alpha_hat > s.rho_hat && s.rho_hat > -s.gamma_hat,
                    ErrorKind::InvalidParameter, "post payoffs must keep the prisoner's dilemma ranking");
}

inline bool pd_cooperation_preserved(const PDSpec& s) {
    validate_pd(s);
    const bool tail = s.beta_hat <= s.beta ||
                      ((1.0 - s.rho_hat) * (s.beta - 1.0) + s.alpha_hat >= s.beta_hat && s.beta_hat > s.beta);
    return s.rho_hat <= 0.0 && 1.0 <= s.alpha_hat && tail;
}

/// Cooperate (c) and defect (d) as a binary menu; state 0 = play continues (weight δ), state 1 = it does not.
struct PDMenu {
    Payoffs c, d, c_hat, d_hat;
};

inline PDMenu pd_induced_menu(const PDSpec& s) {
    validate_pd(s);
    return {{1.0, 1.0}, {0.0, s.beta}, {s.alpha_hat, s.alpha_hat}, {s.rho_hat, s.beta_hat}};
}

inline bool pd_made_steeper(const PDSpec& s, double eps = kEps) {
    const PDMenu m = pd_induced_menu(s);
    return made_steeper(m.c, m.d, m.c_hat, m.d_hat, eps);
}

// -------------------------------------------------------------- lower bound

struct LowerBoundReport {
    bool ordinal_ok = true;
    /// The super-actuarial inequality on every pair of the transformed menu.
    bool ineq1_ok = true;

    bool holds() const { return ordinal_ok; }
};

/// Transforms every payoff through v and checks the ordinal conditions pairwise.
template <UtilityFunction V>
LowerBoundReport lower_bound_transform_check(const MonotoneProblem& problem, const V& v, double eps = kEps) {
    PayoffTable post;
    for (const auto& a : problem.actions()) {
        Payoffs row;
        for (double x : a.payoffs) row.push_back(v(x));
        post.push_back(std::move(row));
    }
    LowerBoundReport rep;
    for (std::size_t i = 0; i < problem.size(); ++i)
        for (std::size_t j = i + 1; j < problem.size(); ++j) {
            const Payoffs& a = problem.action(i).payoffs;
            const Payoffs& b = problem.action(j).payoffs;
            const StatePartition part = partition_states(a, b);
            for (std::size_t th : part.a_states)
                if (!approx_leq(post[j][th], b[th], eps) || !approx_leq(post[i][th], a[th], eps)) rep.ordinal_ok = false;
            for (std::size_t thp : part.b_states)
                if (!approx_geq(post[j][thp], b[thp], eps) || !approx_geq(post[i][thp], a[thp], eps))
                    rep.ordinal_ok = false;
            for (std::size_t th : part.a_states)
                for (std::size_t thp : part.b_states)
                    if (!super_actuarial_improvement(a, b, post[i], post[j], th, thp, eps)) rep.ineq1_ok = false;
        }
    return rep;
}

// ----------------------------------------------------------- two-state chains

/// Risk-neutral indifference beliefs μ_1 < … < μ_{m−1} of consecutive actions.
inline std::vector<double> risk_neutral_chain(const MonotoneProblem& p) {
    detail::require(p.state_count() == 2, ErrorKind::DimensionError, "two-state problem required");
    std::vector<double> mus;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        const Payoffs& a = p.action(i).payoffs;
        const Payoffs& b = p.action(i + 1).payoffs;
        const double fall = a[0] - b[0], rise = b[1] - a[1];
        mus.push_back(fall / (fall + rise));
        if (i > 0)
            detail::require(mus[i] > mus[i - 1], ErrorKind::ConcavityViolation,
                            "an action is weakly dominated for a risk-neutral agent");
    }
    return mus;
}

/// Every adjacent pair made steeper; requires a strictly concave point chain.
inline bool two_state_adjacent_steeper(const Transformation& t, double eps = kEps) {
    risk_neutral_chain(t.problem());
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (!made_steeper(t.pre(i), t.pre(i + 1), t.post(i), t.post(i + 1), eps)) return false;
    return true;
}

} // namespace robustcs
