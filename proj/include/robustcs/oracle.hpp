#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "robustcs/core.hpp"
#include "robustcs/steepening.hpp"

namespace robustcs {

/// Finite stand-in for the class of concave increasing utilities.
struct UtilityFamily {
    std::vector<PiecewiseLinearUtility> members;
    std::string provenance;
};

/// Finite stand-in for the belief simplex.
struct BeliefGrid {
    std::vector<Belief> beliefs;
    double resolution = 0.0;
};

/**
 * Kinked utilities with kinks at `n_kinks` evenly spaced interior points of
 * [lo, hi] plus every value in `extra_kinks`, crossed with `iotas`.
 * Enumeration order: kinks ascending, then iotas as given.
 */
inline UtilityFamily kinked_grid(double lo, double hi, std::size_t n_kinks, const std::vector<double>& iotas,
                                 const std::vector<double>& extra_kinks = {}) {
    detail::require(lo < hi, ErrorKind::InvalidParameter, "kinked_grid needs lo < hi");
    std::set<double> kinks(extra_kinks.begin(), extra_kinks.end());
    for (std::size_t k = 1; k <= n_kinks; ++k)
        kinks.insert(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n_kinks + 1));
    UtilityFamily fam;
    fam.provenance = "kinked-grid";
    for (double kink : kinks)
        for (double iota : iotas) fam.members.push_back(KinkedUtility(kink, iota).to_piecewise());
    return fam;
}

/**
 * `n` random concave utilities, deterministic in `seed`. Each has `knots`
 * sorted breakpoints in [lo, hi]; the slope is constant up to the second knot
 * and strictly decreases at each later one, so knots = 1 gives affine members.
 */
inline UtilityFamily random_concave_family(std::uint64_t seed, std::size_t n, std::size_t knots, double lo, double hi) {
    detail::require(n >= 1 && knots >= 1, ErrorKind::InvalidParameter, "n and knots must be at least 1");
    detail::require(lo < hi, ErrorKind::InvalidParameter, "random_concave_family needs lo < hi");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pos(lo, hi);
    std::uniform_real_distribution<double> first_slope(0.5, 2.0);
    std::uniform_real_distribution<double> shrink(0.05, 0.95);
    std::uniform_real_distribution<double> level(-1.0, 1.0);
    UtilityFamily fam;
    fam.provenance = "random-concave(" + std::to_string(seed) + ")";
    for (std::size_t m = 0; m < n; ++m) {
        std::set<double> pts;
        while (pts.size() < knots) pts.insert(pos(rng));
        std::vector<double> bps(pts.begin(), pts.end());
        std::vector<double> slopes{first_slope(rng)};
        slopes.push_back(slopes.front());
        for (std::size_t k = 1; k < knots; ++k) slopes.push_back(slopes.back() * shrink(rng));
        fam.members.emplace_back(std::move(bps), std::move(slopes), level(rng));
    }
    return fam;
}

inline UtilityFamily risk_neutral_family() { return {{PiecewiseLinearUtility::identity()}, "risk-neutral"}; }

inline const std::vector<double>& default_iotas() {
    static const std::vector<double> v{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    return v;
}

inline std::vector<double> all_payoffs(const Transformation& t) {
    std::vector<double> values;
    for (std::size_t i = 0; i < t.size(); ++i) {
        values.insert(values.end(), t.pre(i).begin(), t.pre(i).end());
        values.insert(values.end(), t.post(i).begin(), t.post(i).end());
    }
    return values;
}

/// Smallest and largest payoff before or after; widened to unit length when they coincide.
inline std::pair<double, double> payoff_range(const Transformation& t) {
    const auto values = all_payoffs(t);
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    return {*mn, *mx > *mn ? *mx : *mn + 1.0};
}

/// Kinks at every distinct payoff (pre and post) plus `fillers` evenly spaced points.
inline UtilityFamily default_family(const Transformation& t, std::size_t fillers = 9,
                                    const std::vector<double>& iotas = default_iotas()) {
    const auto [lo, hi] = payoff_range(t);
    return kinked_grid(lo, hi, fillers, iotas, all_payoffs(t));
}

namespace detail {

inline std::size_t grid_steps(double resolution) {
    detail::require(resolution > 0.0 && resolution <= 1.0, ErrorKind::InvalidParameter, "resolution must be in (0,1]");
    const double k = std::round(1.0 / resolution);
    detail::require(std::abs(k * resolution - 1.0) < 1e-9, ErrorKind::InvalidParameter,
                    "resolution must divide 1 evenly");
    return static_cast<std::size_t>(k);
}

} // namespace detail

/// Vertices first, then the interior points of every edge in (low, high) order.
inline BeliefGrid edge_grid(std::size_t n_states, double resolution) {
    const std::size_t steps = detail::grid_steps(resolution);
    BeliefGrid g;
    g.resolution = resolution;
    for (std::size_t k = 0; k < n_states; ++k) g.beliefs.push_back(Belief::vertex(n_states, k));
    for (std::size_t lo = 0; lo < n_states; ++lo)
        for (std::size_t hi = lo + 1; hi < n_states; ++hi)
            for (std::size_t s = 1; s < steps; ++s)
                g.beliefs.push_back(
                    Belief::edge(n_states, lo, hi, static_cast<double>(s) / static_cast<double>(steps)));
    return g;
}

/// Full simplex lattice for 2-3 states; edges plus vertices beyond that.
inline BeliefGrid simplex_grid(std::size_t n_states, double resolution) {
    if (n_states != 3) return edge_grid(n_states, resolution);
    const std::size_t steps = detail::grid_steps(resolution);
    BeliefGrid g;
    g.resolution = resolution;
    const double k = static_cast<double>(steps);
    for (std::size_t i = 0; i <= steps; ++i)
        for (std::size_t j = 0; i + j <= steps; ++j) {
            const std::size_t l = steps - i - j;
            const double w0 = static_cast<double>(i) / k, w1 = static_cast<double>(j) / k;
            g.beliefs.push_back(Belief({w0, w1, static_cast<double>(l) / k}));
        }
    return g;
}

inline BeliefGrid merge_grids(const BeliefGrid& a, const BeliefGrid& b) {
    BeliefGrid g = a;
    g.resolution = std::min(a.resolution, b.resolution);
    for (const auto& mu : b.beliefs)
        if (std::find(g.beliefs.begin(), g.beliefs.end(), mu) == g.beliefs.end()) g.beliefs.push_back(mu);
    return g;
}

/**
 * Checks that A*(μ,u) dominates Â*(μ,u) in the strong set order for every
 * member u and belief μ, in family-major order. Ties are judged with
 * money_tie_tol(u, tie_tol). The first violation is
 * returned as a witness; otherwise the verdict certifies the supplied
 * family and grid only.
 */
inline Verdict verify_reduction(const Transformation& t, const UtilityFamily& fam, const BeliefGrid& grid,
                                double tie_tol = kTieTol) {
    const std::size_t m = t.size(), n = t.state_count();
    std::vector<double> u_pre(m * n), u_post(m * n), v_pre(m), v_post(m);
    for (const auto& u : fam.members) {
        const double tol = money_tie_tol(u, tie_tol);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t s = 0; s < n; ++s) {
                u_pre[i * n + s] = u(t.pre(i)[s]);
                u_post[i * n + s] = u(t.post(i)[s]);
            }
        for (const auto& mu : grid.beliefs) {
            for (std::size_t i = 0; i < m; ++i) {
                double a = 0.0, b = 0.0;
                for (std::size_t s = 0; s < n; ++s) {
                    a += mu[s] * u_pre[i * n + s];
                    b += mu[s] * u_post[i * n + s];
                }
                v_pre[i] = a;
                v_post[i] = b;
            }
            ActionSet pre = argmax_set(v_pre, tol);
            ActionSet post = argmax_set(v_post, tol);
            if (!strong_set_order_dominates(pre, post)) {
                Verdict v;
                v.status = VerdictStatus::Refuted;
                v.witness = Witness{u, mu, std::move(pre), std::move(post)};
                return v;
            }
        }
    }
    Verdict v;
    v.status = VerdictStatus::CertifiedHolds;
    v.note = "certified over " + std::to_string(fam.members.size()) + " utilities (" + fam.provenance + ") and " +
             std::to_string(grid.beliefs.size()) + " beliefs";
    return v;
}

/// μ_u ≤ μ̂_u for every member and every (θ, θ') ∈ A × B of the binary menu.
inline bool edge_monotonicity_check(const Payoffs& a, const Payoffs& b, const Payoffs& ah, const Payoffs& bh,
                                    const UtilityFamily& fam, double eps = kEps) {
    const StatePartition part = partition_states(a, b);
    for (const auto& u : fam.members)
        for (std::size_t th : part.a_states)
            for (std::size_t thp : part.b_states) {
                const auto mu = indifference_belief(a, b, th, thp, u);
                const auto mu_hat = indifference_belief(ah, bh, th, thp, u);
                if (mu && mu_hat && !approx_leq(*mu, *mu_hat, eps)) return false;
            }
    return true;
}

} // namespace robustcs
