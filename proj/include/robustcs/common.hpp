#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace robustcs {

/// Default comparison tolerance. `x >= y` is read as `x >= y - eps`.
inline constexpr double kEps = 1e-9;

/// Default tolerance for optimal-set membership.
inline constexpr double kTieTol = 1e-9;

inline bool approx_geq(double x, double y, double eps = kEps) { return x >= y - eps; }
inline bool approx_leq(double x, double y, double eps = kEps) { return x <= y + eps; }
inline bool approx_eq(double x, double y, double eps = kEps) { return std::abs(x - y) <= eps; }

using Payoffs = std::vector<double>;
using PayoffTable = std::vector<Payoffs>;
using ActionSet = std::vector<std::size_t>;

enum class ErrorKind {
    InvalidGrid,
    InvalidAction,
    NonMonotoneAction,
    DuplicateAction,
    DominanceViolation,
    SingleCrossingViolation,
    DimensionMismatch,
    OrderFlip,
    MonotoneBreak,
    InvalidBelief,
    InvalidUtility,
    EmptySet,
    EmptySupport,
    PreconditionViolated,
    UnreachableCase4,
    InvalidParameter,
    ConcavityViolation,
    DimensionError,
    ParseError,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::InvalidAction: return "InvalidAction";
    case ErrorKind::NonMonotoneAction: return "NonMonotoneAction";
    case ErrorKind::DuplicateAction: return "DuplicateAction";
    case ErrorKind::DominanceViolation: return "DominanceViolation";
    case ErrorKind::SingleCrossingViolation: return "SingleCrossingViolation";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::OrderFlip: return "OrderFlip";
    case ErrorKind::MonotoneBreak: return "MonotoneBreak";
    case ErrorKind::InvalidBelief: return "InvalidBelief";
    case ErrorKind::InvalidUtility: return "InvalidUtility";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::EmptySupport: return "EmptySupport";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::UnreachableCase4: return "UnreachableCase4";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::ConcavityViolation: return "ConcavityViolation";
    case ErrorKind::DimensionError: return "DimensionError";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// All validation failures surface as this exception; `kind()` identifies the rule.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

namespace detail {

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) throw Error(kind, what);
}

inline bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

} // namespace detail
} // namespace robustcs
