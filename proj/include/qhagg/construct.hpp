#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhagg/aggregation.hpp"
#include "qhagg/numerics.hpp"
#include "qhagg/unit_function.hpp"

namespace qhagg {

/// (f, g, h): f is the diagonal, h the section A(., 1), g the section
/// A(1, .). A valid triple generates
///
///   A(x,y) = 0                          if x = y = 0
///            f(y * f^{-1}(h(x / y)))    if x <= y, y != 0
///            f(x * f^{-1}(g(y / x)))    if y <= x, x != 0
///
/// Ties x = y take the first branch; both branches give f(x) there.
struct GeneratorTriple {
    UnitFunction f;
    UnitFunction g;
    UnitFunction h;
};

struct TripleCondition {
    std::string name;
    bool passed = true;
    /// Where it failed: a single point (x, x) or a consecutive grid pair
    /// (x_i, x_{i+1}) for the ratio conditions.
    std::optional<std::pair<double, double>> witness;
    std::string detail;
};

struct TripleReport {
    std::vector<TripleCondition> conditions;

    [[nodiscard]] bool passed() const;
    [[nodiscard]] const TripleCondition* first_failure() const;
    [[nodiscard]] const TripleCondition* find(std::string_view name) const;
};

/// Condition names, in report order.
namespace triple_condition {
inline constexpr std::string_view kFBijection = "f increasing bijection";
inline constexpr std::string_view kGIncreasing = "g increasing";
inline constexpr std::string_view kHIncreasing = "h increasing";
inline constexpr std::string_view kGAtOne = "g(1)=1";
inline constexpr std::string_view kHAtOne = "h(1)=1";
inline constexpr std::string_view kHRatio = "f^-1(h(x))/x nonincreasing";
inline constexpr std::string_view kGRatio = "f^-1(g(x))/x nonincreasing";
}  // namespace triple_condition

/// Sufficient conditions for the triple to generate a quasi-homogeneous
/// aggregation function. The ratio conditions compare consecutive grid
/// points from 1/n upward: r(x_i) >= r(x_{i+1}) - tol.
TripleReport validate_triple(const GeneratorTriple& t, const Grid& grid, double tol = 1e-12);

class InvalidTriple : public std::invalid_argument {
public:
    explicit InvalidTriple(TripleReport report);
    [[nodiscard]] const TripleReport& report() const { return report_; }

private:
    TripleReport report_;
};

/// The generated function; validates on the default grid first.
AggregationFunction from_triple(const GeneratorTriple& t);

/// The bare formula with no validation, for studying invalid triples.
/// f still has to be an increasing bijection so that f^{-1} exists.
AggregationFunction triple_formula(const GeneratorTriple& t);

/// A(0,0)=0; 1 on (0,1]^2; alpha on the edge x=0, y>0; beta on y=0, x>0.
AggregationFunction class_flat(double alpha, double beta);

/// A(1,1)=1; 0 on [0,1)^2; g(y) on the edge x=1; h(x) on the edge y=1.
AggregationFunction class_boundary(const UnitFunction& g, const UnitFunction& h);

/// Canonical sections (diag A, A(1, .), A(., 1)). Never fails; whether they
/// regenerate A is for classification to decide.
GeneratorTriple triple_of(const AggregationFunction& a);

}  // namespace qhagg
