#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "qhagg/expr.hpp"
#include "qhagg/numerics.hpp"

namespace qhagg {

/// Raised when a function fails the structural checks it was declared with.
/// `at()` is the first grid point (in increasing order) that broke the rule.
class InvalidFunction : public std::invalid_argument {
public:
    InvalidFunction(const std::string& what, double at)
        : std::invalid_argument(what + " (at x=" + format_shortest(at) + ")"), at_(at) {}

    [[nodiscard]] double at() const { return at_; }

private:
    double at_;
};

struct UnitFlags {
    bool increasing = false;
    bool strictly_increasing = false;
    bool continuous_bijection = false;

    static constexpr UnitFlags none() { return {}; }
    static constexpr UnitFlags monotone() { return {true, false, false}; }
    static constexpr UnitFlags bijection() { return {true, true, true}; }
};

/// A map [0,1] -> [0,1] together with the structure it is declared to have.
///
/// Construction samples the default grid: every sample must lie in [0,1];
/// `increasing` requires nondecreasing samples; `continuous_bijection`
/// requires f(0) = 0 and f(1) = 1 exactly plus strictly increasing samples.
/// Continuity itself cannot be sampled and is taken on trust.
class UnitFunction {
public:
    using Fn = std::function<double(double)>;

    UnitFunction(std::string name, Fn eval, UnitFlags flags = {}, Fn inverse = {});

    /// Wrap a parsed expression. `x` and `x^c` get a closed-form inverse.
    static UnitFunction from_expr(const Expr& expr, UnitFlags flags = {});

    [[nodiscard]] double operator()(double x) const { return eval_(x); }
    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] UnitFlags flags() const { return flags_; }
    [[nodiscard]] bool has_closed_form_inverse() const { return static_cast<bool>(inverse_); }

    /// Same evaluator with new declared flags, re-validated.
    [[nodiscard]] UnitFunction with_flags(UnitFlags flags) const;

    /// f^{-1}(y). Uses the closed form when present, bisection otherwise.
    [[nodiscard]] double inverse(double y, double tol = kDefaultInvertTol) const;

private:
    friend double invert_monotone(const UnitFunction& f, double y, double tol);
    void validate() const;

    std::string name_;
    Fn eval_;
    UnitFlags flags_;
    Fn inverse_;
};

/// Realises f^{-1}(y) for a declared continuous bijection.
/// Throws ContractViolation if f is not declared bijective and DomainError
/// if y cannot be bracketed.
double invert_monotone(const UnitFunction& f, double y, double tol = kDefaultInvertTol);

namespace unit {

UnitFunction identity();
/// x^c, c > 0, with inverse y^(1/c).
UnitFunction power(double c);
/// 2x / (1 + x), with inverse y / (2 - y).
UnitFunction harmonic();
/// w * u(x) + (1 - w) * x for w in [0,1]; bijection iff u is.
UnitFunction blend_with_identity(double w, const UnitFunction& u);
/// Parse and wrap, e.g. unit::parse("2*x/(1+x)", UnitFlags::bijection()).
UnitFunction parse(std::string_view text, UnitFlags flags = {});

}  // namespace unit

}  // namespace qhagg
