#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qhagg {

/// Raised when a caller breaks a documented precondition (e.g. inverting a
/// function that was never declared bijective).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised when a numerical routine cannot produce an answer for the given
/// input (e.g. a bisection target outside the function's range).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultInvertTol = 1e-12;
inline constexpr int kMaxBisectionIterations = 200;

/// A value in [0, inf]. Infinity is the host double infinity; only the
/// product 0 * inf needs patching (it is 0, not NaN).
class ExtNonneg {
public:
    constexpr ExtNonneg() = default;
    explicit ExtNonneg(double v);

    static constexpr ExtNonneg infinity() { return ExtNonneg(Raw{}, kInfinity); }
    static constexpr ExtNonneg zero() { return ExtNonneg(Raw{}, 0.0); }

    [[nodiscard]] constexpr double value() const { return value_; }
    [[nodiscard]] constexpr bool is_infinite() const { return value_ == kInfinity; }
    [[nodiscard]] constexpr bool is_zero() const { return value_ == 0.0; }

    friend constexpr auto operator<=>(ExtNonneg, ExtNonneg) = default;

private:
    struct Raw {};
    constexpr ExtNonneg(Raw, double v) : value_(v) {}
    double value_ = 0.0;
};

/// Product with 0 * inf = inf * 0 = 0.
ExtNonneg ext_mul(ExtNonneg a, ExtNonneg b);

/// a / b with 1/inf = 0. A finite numerator over an infinite denominator is
/// 0; inf / inf is 1 (the only ratio r with r * inf = inf that also keeps
/// r in [0,1]). Division by zero is a DomainError.
ExtNonneg ext_div(ExtNonneg a, ExtNonneg b);

/// Uniform sampling {i/n : 0 <= i <= n} of the unit interval with exact
/// endpoints.
class Grid {
public:
    explicit Grid(std::size_t n);

    [[nodiscard]] std::size_t resolution() const { return n_; }
    [[nodiscard]] std::size_t size() const { return points_.size(); }
    [[nodiscard]] std::span<const double> points() const { return points_; }
    [[nodiscard]] double operator[](std::size_t i) const { return points_[i]; }

    [[nodiscard]] auto begin() const { return points_.begin(); }
    [[nodiscard]] auto end() const { return points_.end(); }

private:
    std::size_t n_;
    std::vector<double> points_;
};

Grid make_grid(std::size_t n);

inline constexpr std::size_t kDefaultGridResolution = 100;

/// Bisection for an increasing f on [0,1]; f may return +inf at the right
/// end. Runs until the bracket collapses to adjacent doubles or the
/// iteration cap is hit, so the result is accurate to machine resolution;
/// `tol` only governs the bracketing check.
double bisect_increasing(const std::function<double(double)>& f, double y,
                         double tol = kDefaultInvertTol);

/// Least-squares fit of y = x^c through the origin in log-log space:
/// c = sum(log x log y) / sum(log x)^2. Only pairs with x in (0,1) and y > 0
/// take part.
struct PowerFit {
    double exponent = 0.0;
    double max_abs_residual = 0.0;  // max |y - x^c| over the fitted pairs
    std::size_t points_used = 0;
};

std::optional<PowerFit> fit_power_exponent(std::span<const double> xs,
                                           std::span<const double> ys);

/// Shortest decimal that round-trips to the same double.
std::string format_shortest(double v);

/// Shortest round-trip decimal in positional notation (never scientific).
std::string format_fixed_shortest(double v);

}  // namespace qhagg
