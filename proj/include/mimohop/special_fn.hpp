#pragma once

// Scalar special functions used by every energy formula: erfc, its inverse,
// the Philip closed-form approximation of the inverse, and gamma.

#include <cmath>
#include <numbers>
#include <string>

#include "mimohop/errors.hpp"

namespace mimohop {

/// A probability in [0, 1].
class Probability {
public:
    constexpr Probability() = default;
    explicit Probability(double value) : value_(value) {
        if (!(value >= 0.0 && value <= 1.0)) {
            throw DomainError("probability outside [0, 1]: " + std::to_string(value));
        }
    }
    [[nodiscard]] constexpr double value() const noexcept { return value_; }
    [[nodiscard]] constexpr double complement() const noexcept { return 1.0 - value_; }

private:
    double value_ = 0.0;
};

/// Which inverse-erfc route feeds the k offsets.
enum class InverseMode { exact, philip };

inline double erfc(double x) noexcept {
    const double y = std::erfc(x);
    return y < 0.0 ? 0.0 : y;
}

/// Philip's closed form erfc^-1(x) ~ sqrt(-ln(sqrt(pi) x sqrt(-ln x))) for 0 < x < 1.
/// Works on ln x directly so arguments down to the smallest normal double are fine.
inline double erfc_inv_philip(double x) {
    if (!(x > 0.0 && x < 1.0)) {
        throw DomainError("erfc_inv_philip: argument must lie in (0, 1)");
    }
    const double log_x = std::log(x);
    // ln(sqrt(pi) * x * sqrt(-ln x))
    const double log_arg = 0.5 * std::log(std::numbers::pi) + log_x + 0.5 * std::log(-log_x);
    if (log_arg >= 0.0) {
        throw EvalError("erfc_inv_philip: approximation invalid (outer log argument >= 1)");
    }
    return std::sqrt(-log_arg);
}

namespace detail {

// Below this argument erfc_inv switches to the Philip value: erfc itself
// leaves the normal double range shortly after.
inline constexpr double kErfcUnderflowArgument = 1e-280;
inline constexpr double kRootTolerance = 1e-13;
inline constexpr int kRootMaxIterations = 200;

// Solves erfc(x) = y for 0 < y < 1, i.e. x > 0.
inline double erfc_inv_upper(double y) {
    if (y < kErfcUnderflowArgument) {
        return erfc_inv_philip(y);
    }
    constexpr double two_over_sqrt_pi = std::numbers::inv_sqrtpi * 2.0;
    const double log_y = std::log(y);

    double lo = 0.0;
    double hi = 27.0;  // erfc(27) ~ 5e-319 < 1e-280
    double x = y < 0.5 ? erfc_inv_philip(y) : (1.0 - y) / two_over_sqrt_pi;
    if (!(x > lo && x < hi)) {
        x = 0.5 * (lo + hi);
    }

    for (int iter = 0; iter < kRootMaxIterations; ++iter) {
        const double e = erfc(x);
        // g(x) = ln erfc(x) - ln y is decreasing in x
        const double g = std::log(e) - log_y;
        if (g == 0.0) {
            return x;
        }
        if (g > 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        const double slope = -two_over_sqrt_pi * std::exp(-x * x) / e;
        double next = x - g / slope;
        if (!(next > lo && next < hi) || !std::isfinite(next)) {
            next = 0.5 * (lo + hi);
        }
        if (std::abs(next - x) <= kRootTolerance * std::abs(next) || hi - lo <= kRootTolerance * lo) {
            return next;
        }
        x = next;
    }
    return x;
}

}  // namespace detail

/// Inverse of erfc on (0, 2). Arguments above 1 go through the reflection
/// erfc^-1(2 - y) = -erfc^-1(y), so callers should pass the small tail value
/// directly whenever they have it.
inline double erfc_inv(double y) {
    if (!(y > 0.0 && y < 2.0)) {
        throw DomainError("erfc_inv: argument must lie in (0, 2)");
    }
    if (y == 1.0) {
        return 0.0;
    }
    if (y > 1.0) {
        return -detail::erfc_inv_upper(2.0 - y);
    }
    return detail::erfc_inv_upper(y);
}

/// erfc^-1 of a small tail argument t in (0, 2) using the selected route.
/// In philip mode the closed form is applied on the lower branch and reflected
/// for t > 1.
inline double erfc_inv(double y, InverseMode mode) {
    if (mode == InverseMode::exact) {
        return erfc_inv(y);
    }
    if (!(y > 0.0 && y < 2.0)) {
        throw DomainError("erfc_inv: argument must lie in (0, 2)");
    }
    if (y == 1.0) {
        return 0.0;
    }
    return y < 1.0 ? erfc_inv_philip(y) : -erfc_inv_philip(2.0 - y);
}

inline double gamma(double x) {
    if (!(x > 0.0)) {
        throw DomainError("gamma: argument must be positive");
    }
    return std::tgamma(x);
}

}  // namespace mimohop
