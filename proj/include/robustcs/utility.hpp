#pragma once

#include <algorithm>
#include <concepts>
#include <vector>

#include "robustcs/common.hpp"

namespace robustcs {

template <class U>
concept UtilityFunction = requires(const U& u, double x) {
    { u(x) } -> std::convertible_to<double>;
};

/**
 * Continuous, strictly increasing, concave piecewise-linear utility.
 *
 * `slopes` has one more entry than `breakpoints`: slopes[0] applies left of
 * breakpoints[0] (extended to -inf), slopes[k] between breakpoints[k-1] and
 * breakpoints[k], and the last slope to the right of the last breakpoint.
 * `anchor` is the value at breakpoints[0].
 */
class PiecewiseLinearUtility {
public:
    PiecewiseLinearUtility(std::vector<double> breakpoints, std::vector<double> slopes, double anchor)
        : breakpoints_(std::move(breakpoints)), slopes_(std::move(slopes)), anchor_(anchor) {
        using detail::require;
        require(!breakpoints_.empty(), ErrorKind::InvalidUtility, "at least one breakpoint required");
        require(slopes_.size() == breakpoints_.size() + 1, ErrorKind::InvalidUtility,
                "slopes must have one more entry than breakpoints");
        require(detail::all_finite(breakpoints_) && detail::all_finite(slopes_) && std::isfinite(anchor_),
                ErrorKind::InvalidUtility, "non-finite utility parameter");
        for (std::size_t i = 1; i < breakpoints_.size(); ++i)
            require(breakpoints_[i] > breakpoints_[i - 1], ErrorKind::InvalidUtility,
                    "breakpoints must be strictly increasing");
        for (std::size_t i = 0; i < slopes_.size(); ++i) {
            require(slopes_[i] > 0.0, ErrorKind::InvalidUtility, "slopes must be strictly positive");
            if (i > 0)
                require(slopes_[i] <= slopes_[i - 1], ErrorKind::InvalidUtility,
                        "slopes must be weakly decreasing (concavity)");
        }
        values_.resize(breakpoints_.size());
        values_[0] = anchor_;
        for (std::size_t i = 1; i < breakpoints_.size(); ++i)
            values_[i] = values_[i - 1] + slopes_[i] * (breakpoints_[i] - breakpoints_[i - 1]);
    }

    /// The risk-neutral member u(x) = x.
    static PiecewiseLinearUtility identity() { return {{0.0}, {1.0, 1.0}, 0.0}; }

    double operator()(double x) const {
        if (x <= breakpoints_.front()) return anchor_ + slopes_.front() * (x - breakpoints_.front());
        auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
        std::size_t k = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
        return values_[k] + slopes_[k + 1] * (x - breakpoints_[k]);
    }

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& slopes() const { return slopes_; }
    double anchor() const { return anchor_; }

    bool is_affine() const {
        return std::all_of(slopes_.begin(), slopes_.end(), [&](double s) { return s == slopes_.front(); });
    }

    friend bool operator==(const PiecewiseLinearUtility&, const PiecewiseLinearUtility&) = default;

private:
    std::vector<double> breakpoints_;
    std::vector<double> slopes_;
    double anchor_;
    std::vector<double> values_;
};

/// u(x) = min{x, iota*x + (1-iota)*kink}: identity below the kink, slope iota above it.
class KinkedUtility {
public:
    KinkedUtility(double kink, double iota) : kink_(kink), iota_(iota) {
        detail::require(std::isfinite(kink), ErrorKind::InvalidUtility, "kink must be finite");
        detail::require(iota > 0.0 && iota < 1.0, ErrorKind::InvalidUtility, "iota must lie in (0,1)");
    }

    double operator()(double x) const { return std::min(x, iota_ * x + (1.0 - iota_) * kink_); }

    double kink() const { return kink_; }
    double iota() const { return iota_; }

    PiecewiseLinearUtility to_piecewise() const { return {{kink_}, {1.0, iota_}, kink_}; }

    friend bool operator==(const KinkedUtility&, const KinkedUtility&) = default;

private:
    double kink_;
    double iota_;
};

} // namespace robustcs
