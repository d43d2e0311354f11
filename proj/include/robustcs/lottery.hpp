#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "robustcs/core.hpp"

namespace robustcs {

/// Finite lottery over money; outcomes ascending, probabilities summing to 1.
class DiscreteLottery {
public:
    using Atom = std::pair<double, double>;

    explicit DiscreteLottery(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
        detail::require(!atoms_.empty(), ErrorKind::EmptySupport, "lottery has no outcomes");
        double total = 0.0;
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            const auto& [x, p] = atoms_[i];
            detail::require(std::isfinite(x) && std::isfinite(p) && p >= 0.0, ErrorKind::InvalidParameter,
                            "lottery atoms must be finite with nonnegative probability");
            if (i > 0)
                detail::require(x > atoms_[i - 1].first, ErrorKind::InvalidParameter,
                                "lottery outcomes must be strictly ascending");
            total += p;
        }
        detail::require(std::abs(total - 1.0) <= 1e-12, ErrorKind::InvalidParameter,
                        "lottery probabilities must sum to 1");
    }

    const std::vector<Atom>& atoms() const { return atoms_; }
    double min_outcome() const { return atoms_.front().first; }
    double max_outcome() const { return atoms_.back().first; }

    /// ∫_{lo}^{x} F(s) ds for lo at or below every outcome.
    double integrated_cdf(double x) const {
        double total = 0.0;
        for (const auto& [o, p] : atoms_)
            if (x > o) total += p * (x - o);
        return total;
    }

    friend bool operator==(const DiscreteLottery&, const DiscreteLottery&) = default;

private:
    std::vector<Atom> atoms_;
};

/// Pushforward of the belief through the action; equal outcomes merge, null outcomes drop.
inline DiscreteLottery induced_lottery(const Payoffs& action, const Belief& belief) {
    detail::require(action.size() == belief.size(), ErrorKind::DimensionMismatch, "belief and action differ in size");
    std::map<double, double> mass;
    for (std::size_t i = 0; i < action.size(); ++i)
        if (belief[i] > 0.0) mass[action[i]] += belief[i];
    return DiscreteLottery(std::vector<DiscreteLottery::Atom>(mass.begin(), mass.end()));
}

struct LotteryReport {
    /// ∫(L1 − L2) ≤ 0 implies ∫(L̂1 − L̂2) ≤ 0 at every x.
    bool implication_holds = true;
    /// sup over X− of the ratio ≤ inf over X+ of the ratio.
    bool ratio_holds = true;
    double sup_ratio = -std::numeric_limits<double>::infinity();
    double inf_ratio = std::numeric_limits<double>::infinity();

    bool holds() const { return implication_holds && ratio_holds; }
};

/**
 * Known-lottery conditions for "L1 ⪰ L2 implies L̂1 ⪰ L̂2" under every concave
 * increasing utility. Both integrated-CDF differences are piecewise linear
 * between outcomes; the evaluation set is every outcome plus every interior
 * zero of either difference, and the ratio on each open piece is handled
 * through its endpoint limits (the ratio is monotone there).
 */
inline LotteryReport lottery_conditions_report(const DiscreteLottery& l1, const DiscreteLottery& l2,
                                               const DiscreteLottery& lh1, const DiscreteLottery& lh2) {
    const std::array<const DiscreteLottery*, 4> all{&l1, &l2, &lh1, &lh2};
    std::vector<double> knots;
    for (const auto* l : all)
        for (const auto& atom : l->atoms()) knots.push_back(atom.first);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    const double lo = knots.front();
    const double hi = knots.back();
    const double z = 1e-12 * std::max(1.0, hi - lo);
    const double inf = std::numeric_limits<double>::infinity();

    auto d = [&](double x) { return l1.integrated_cdf(x) - l2.integrated_cdf(x); };
    auto dh = [&](double x) { return lh1.integrated_cdf(x) - lh2.integrated_cdf(x); };

    // Refine every segment at interior zeros of either difference.
    std::vector<double> pts{lo};
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        const double l = knots[k], r = knots[k + 1];
        std::vector<double> cuts;
        const double dl = d(l), dr = d(r), hl = dh(l), hr = dh(r);
        if ((dl < -z && dr > z) || (dl > z && dr < -z)) cuts.push_back(l + (r - l) * dl / (dl - dr));
        if ((hl < -z && hr > z) || (hl > z && hr < -z)) cuts.push_back(l + (r - l) * hl / (hl - hr));
        std::sort(cuts.begin(), cuts.end());
        for (double c : cuts)
            if (c > pts.back()) pts.push_back(c);
        pts.push_back(r);
    }

    LotteryReport rep;
    auto is_zero = [&](double v) { return std::abs(v) <= z; };

    // Point evaluations.
    for (double x : pts) {
        const double dv = d(x), hv = dh(x);
        if (dv <= z && hv > z) rep.implication_holds = false;
        if (hv > z) rep.sup_ratio = std::max(rep.sup_ratio, is_zero(dv) ? inf : hv / dv);
        if (dv < -z) rep.inf_ratio = std::min(rep.inf_ratio, hv / dv);
    }

    // Open pieces: limits of the ratio at each endpoint.
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double l = pts[k], r = pts[k + 1];
        if (!(r - l > 0.0)) continue;
        const double mid = 0.5 * (l + r);
        const double dm = d(mid), hm = dh(mid);
        const bool in_minus = hm > z;
        const bool in_plus = dm < -z;
        if (!in_minus && !in_plus) continue;
        if (dm <= z && hm > z) rep.implication_holds = false;
        const double dslope = (d(r) - d(l)) / (r - l);
        const double hslope = (dh(r) - dh(l)) / (r - l);
        auto limit = [&](double x) {
            const double dv = d(x), hv = dh(x);
            if (!is_zero(dv)) return hv / dv;
            if (is_zero(hv) && dslope != 0.0) return hslope / dslope;
            // Denominator vanishes at the endpoint while the numerator does not.
            const double sign = (hm > 0.0 ? 1.0 : -1.0) * (dm > 0.0 ? 1.0 : -1.0);
            return sign * inf;
        };
        const double el = limit(l), er = limit(r);
        if (in_minus) rep.sup_ratio = std::max({rep.sup_ratio, el, er});
        if (in_plus) rep.inf_ratio = std::min({rep.inf_ratio, el, er});
    }

    if (rep.sup_ratio == inf && rep.inf_ratio == inf)
        rep.ratio_holds = true;
    else
        rep.ratio_holds = rep.sup_ratio <= rep.inf_ratio + 1e-9 * std::max(1.0, std::abs(rep.inf_ratio));
    return rep;
}

inline bool check_lottery_conditions(const DiscreteLottery& l1, const DiscreteLottery& l2, const DiscreteLottery& lh1,
                                     const DiscreteLottery& lh2) {
    return lottery_conditions_report(l1, l2, lh1, lh2).holds();
}

} // namespace robustcs
