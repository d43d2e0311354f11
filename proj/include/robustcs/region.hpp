#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "robustcs/core.hpp"
#include "robustcs/genprefs.hpp"
#include "robustcs/steepening.hpp"

namespace robustcs {

enum class RegionCondition { EU, Regular };

inline const char* to_string(RegionCondition c) { return c == RegionCondition::EU ? "eu" : "regular"; }

using Point2 = std::array<double, 2>;
using Polygon = std::vector<Point2>;

/// Axis-aligned box used to clip unbounded regions.
struct Box {
    double xmin, xmax, ymin, ymax;
};

/**
 * Where the target action's post payoffs (x, y) = (â_0, â_1) may be moved,
 * with every other post payoff held fixed, so that the transformation stays
 * order preserving and every pair involving the target satisfies the selected
 * condition. For each y the feasible x form an interval; its ends are the
 * linear, ray, segment and hyperbolic bounds below. Strict inequalities are
 * reported as closed bounds.
 */
class TwoStateRegion {
public:
    TwoStateRegion(const MonotoneProblem& problem, PayoffTable post, std::size_t target,
                   RegionCondition condition, double eps = kEps)
        : pre_(problem.table()), post_(std::move(post)), target_(target), condition_(condition), eps_(eps) {
        detail::require(problem.state_count() == 2, ErrorKind::DimensionError, "region needs a two-state problem");
        detail::require(target < pre_.size(), ErrorKind::InvalidParameter, "target action out of range");
        detail::require(post_.size() == pre_.size(), ErrorKind::DimensionMismatch, "post table has wrong size");
        for (const auto& row : post_)
            detail::require(row.size() == 2, ErrorKind::DimensionError, "post rows must have two entries");
    }

    std::size_t target() const { return target_; }
    RegionCondition condition() const { return condition_; }

    /// Feasible [lo, hi] for x at this y, if any.
    std::optional<std::pair<double, double>> x_bounds(double y) const {
        const double inf = std::numeric_limits<double>::infinity();
        double lo = -inf, hi = inf;
        bool ok = true;
        auto upper = [&](double v) { hi = std::min(hi, v); };
        auto lower = [&](double v) { lo = std::max(lo, v); };
        auto fix = [&](double v) {
            lower(v);
            upper(v);
        };
        const Payoffs& t = pre_[target_];

        // Order preservation within the target and against every other action.
        const int own = detail::sign_of(t[0] - t[1]);
        if (own < 0) upper(y);
        else if (own == 0) fix(y);
        else lower(y);
        for (std::size_t k = 0; k < pre_.size() && ok; ++k) {
            if (k == target_) continue;
            const int s0 = detail::sign_of(t[0] - pre_[k][0]);
            const int s1 = detail::sign_of(t[1] - pre_[k][1]);
            if (detail::sign_of(y - post_[k][1]) != s1) ok = false;
            if (s0 > 0) lower(post_[k][0]);
            else if (s0 < 0) upper(post_[k][0]);
            else fix(post_[k][0]);
        }

        for (std::size_t k = 0; k < pre_.size() && ok; ++k) {
            if (k == target_) continue;
            ok = condition_ == RegionCondition::EU ? eu_pair(k, y, lower, upper) : regular_pair(k, y, lower, upper);
        }
        if (!ok || lo > hi) return std::nullopt;
        return std::make_pair(lo, hi);
    }

    bool contains(double x, double y) const {
        const auto b = x_bounds(y);
        if (b && b->first <= x && x <= b->second) return true;
        return condition_ == RegionCondition::Regular && Payoffs{x, y} == pre_[target_] && unchanged_target_feasible();
    }

    /// One polygon per run of feasible rows over `samples` levels of y, clipped to the box.
    std::vector<Polygon> polygons(const Box& box, std::size_t samples = 256) const {
        std::vector<Polygon> out;
        std::vector<Point2> left, right;
        auto flush = [&] {
            if (!left.empty()) {
                Polygon poly(left.begin(), left.end());
                poly.insert(poly.end(), right.rbegin(), right.rend());
                out.push_back(std::move(poly));
            }
            left.clear();
            right.clear();
        };
        for (std::size_t k = 0; k < samples; ++k) {
            const double y = box.ymin + (box.ymax - box.ymin) * static_cast<double>(k) / static_cast<double>(samples - 1);
            const auto b = x_bounds(y);
            const double lo = b ? std::max(b->first, box.xmin) : 0.0;
            const double hi = b ? std::min(b->second, box.xmax) : 0.0;
            if (b && lo <= hi) {
                left.push_back({lo, y});
                right.push_back({hi, y});
            } else {
                flush();
            }
        }
        flush();
        return out;
    }

    /// Data range padded by its own width on every side.
    Box default_box() const {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const auto* tab : {&pre_, &post_})
            for (const auto& row : *tab)
                for (double v : row) {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
        const double span = std::max(1.0, hi - lo);
        return {lo - span, hi + span, lo - span, hi + span};
    }

    /// The selected pairwise conditions evaluated directly on the modified table.
    bool direct_check(double x, double y) const {
        PayoffTable post = post_;
        post[target_] = {x, y};
        for (std::size_t s = 0; s < 2; ++s)
            for (std::size_t k = 0; k < pre_.size(); ++k) {
                if (detail::sign_of(post[target_][s] - post[k][s]) != detail::sign_of(pre_[target_][s] - pre_[k][s]))
                    return false;
            }
        if (detail::sign_of(x - y) != detail::sign_of(pre_[target_][0] - pre_[target_][1])) return false;
        for (std::size_t k = 0; k < pre_.size(); ++k) {
            if (k == target_) continue;
            const std::size_t i = std::min(k, target_), j = std::max(k, target_);
            const bool ok = condition_ == RegionCondition::EU
                                ? made_steeper(pre_[i], pre_[j], post[i], post[j], eps_)
                                : made_commonly_steeper(pre_[i], pre_[j], post[i], post[j]);
            if (!ok) return false;
        }
        return true;
    }

private:
    // Under the regular condition an unmoved target passes its own equality clause, an
    // isolated point the strict bounds above leave out. The other action's clause remains.
    bool unchanged_target_feasible() const {
        const Payoffs& t = pre_[target_];
        for (std::size_t k = 0; k < pre_.size(); ++k) {
            if (k == target_) continue;
            for (std::size_t s = 0; s < 2; ++s)
                if (detail::sign_of(t[s] - post_[k][s]) != detail::sign_of(t[s] - pre_[k][s])) return false;
            if (k < target_) {
                if (post_[k] != pre_[k] && !dominates_mixture(post_[k], pre_[k], t)) return false;
            } else if (post_[k] != pre_[k] && !dominates_mixture(pre_[k], t, post_[k])) {
                return false;
            }
        }
        return true;
    }

    // Pair (a^k, target) with a^k ◁ target, or (target, a^k) with target ◁ a^k. With two
    // states and no dominance the lower action is strictly better in state 0.
    template <class Lo, class Hi>
    bool eu_pair(std::size_t k, double y, Lo& lower, Hi& upper) const {
        const Payoffs& t = pre_[target_];
        if (k < target_) {
            const Payoffs& a = pre_[k];
            const Payoffs& ah = post_[k];
            if (!approx_geq(ah[1], a[1], eps_)) return false;
            upper(t[0] + eps_);
            const double den = std::min(y, t[1]) - a[1];
            if (!(den > 0.0)) return false;
            const double rhs = (y - ah[1]) / den;
            upper(std::min(ah[0], a[0]) - (a[0] - t[0]) * (rhs - eps_));
            return true;
        }
        const Payoffs& b = pre_[k];
        const Payoffs& bh = post_[k];
        if (!approx_leq(bh[0], b[0], eps_)) return false;
        if (!approx_geq(y, t[1], eps_)) return false;
        const double den = std::min(bh[1], b[1]) - t[1];
        if (!(den > 0.0)) return false;
        const double g = bh[0] + (t[0] - b[0]) * ((bh[1] - y) / den - eps_);
        if (t[0] < g) return false;
        lower(g);
        return true;
    }

    // Largest x with (x, y) strictly below some point P + s·d, s ≥ 0.
    static std::optional<double> ray_upper(const Payoffs& p, const Payoffs& d, double y) {
        const double inf = std::numeric_limits<double>::infinity();
        if (d[1] > 0.0) {
            if (d[0] > 0.0) return inf;
            return p[0] + std::max(0.0, (y - p[1]) / d[1]) * d[0];
        }
        if (!(y < p[1])) return std::nullopt;
        if (d[1] == 0.0) return d[0] > 0.0 ? inf : p[0];
        return d[0] > 0.0 ? p[0] + (p[1] - y) / (-d[1]) * d[0] : p[0];
    }

    // Smallest x with (x, y) strictly above some point of the segment from q to r.
    static std::optional<double> segment_lower(const Payoffs& q, const Payoffs& r, double y) {
        const double e1 = r[1] - q[1];
        double l0 = 0.0, l1 = 1.0;
        if (e1 == 0.0) {
            if (!(q[1] < y)) return std::nullopt;
        } else if (e1 > 0.0) {
            l1 = std::min(1.0, (y - q[1]) / e1);
            if (!(l1 > 0.0)) return std::nullopt;
        } else {
            l0 = std::max(0.0, (y - q[1]) / e1);
            if (!(l0 < 1.0)) return std::nullopt;
        }
        auto s0 = [&](double l) { return q[0] + l * (r[0] - q[0]); };
        return std::min(s0(l0), s0(l1));
    }

    template <class Lo, class Hi>
    bool regular_pair(std::size_t k, double y, Lo& lower, Hi& upper) const {
        const Payoffs& t = pre_[target_];
        if (k < target_) {
            const Payoffs& a = pre_[k];
            const Payoffs& ah = post_[k];
            // b̂ strictly below a point on the ray from b away from a.
            const auto u1 = ray_upper(t, {t[0] - a[0], t[1] - a[1]}, y);
            if (!u1) return false;
            upper(*u1);
            // â strictly dominates a mixture of a and b̂.
            if (ah != a && !(ah[0] > a[0] && ah[1] > a[1])) {
                const auto u2 = ray_upper(ah, {ah[0] - a[0], ah[1] - a[1]}, y);
                if (!u2) return false;
                upper(*u2);
            }
            return true;
        }
        const Payoffs& b = pre_[k];
        const Payoffs& bh = post_[k];
        if (b != bh && !dominates_mixture(b, t, bh)) return false;
        const auto l = segment_lower(bh, t, y);
        if (!l) return false;
        lower(*l);
        return true;
    }

    PayoffTable pre_;
    PayoffTable post_;
    std::size_t target_;
    RegionCondition condition_;
    double eps_;
};

} // namespace robustcs
