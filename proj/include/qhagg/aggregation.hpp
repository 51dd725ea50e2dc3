#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qhagg/numerics.hpp"
#include "qhagg/unit_function.hpp"

namespace qhagg {

enum class Provenance { Catalog, TripleGenerated, ClassFlat, ClassBoundary, Expression, Tabulated };

std::string_view to_string(Provenance p);

/// Outcome of sampling the aggregation-function conditions on a grid:
/// A(0,0) = 0, A(1,1) = 1, values in [0,1], nondecreasing in each argument.
struct AggregationReport {
    struct Witness {
        std::string condition;  // "A(0,0)=0", "A(1,1)=1", "range", "increasing in x", "increasing in y"
        double x = 0.0;
        double y = 0.0;
        double x_next = 0.0;  // neighbour that exposed a monotonicity violation
        double y_next = 0.0;
        double amount = 0.0;  // size of the violation
    };

    bool passed = true;
    double max_violation = 0.0;
    std::optional<Witness> witness;  // first failure in (x, y) grid order
};

/// Sweep the conditions above. Pure function of `eval`, the grid and tol.
AggregationReport scan_aggregation(const std::function<double(double, double)>& eval,
                                   const Grid& grid, double tol);

class InvalidAggregation : public std::invalid_argument {
public:
    InvalidAggregation(const std::string& name, AggregationReport report);
    [[nodiscard]] const AggregationReport& report() const { return report_; }

private:
    AggregationReport report_;
};

/// A bivariate map on [0,1]^2. Built-in constructions are trusted; anything
/// assembled from user input goes through `validated`, which samples the
/// default grid and throws InvalidAggregation with a witness.
class AggregationFunction {
public:
    using Fn = std::function<double(double, double)>;

    AggregationFunction(std::string name, Provenance provenance, Fn eval);

    static AggregationFunction validated(std::string name, Provenance provenance, Fn eval,
                                         double tol = 0.0);

    [[nodiscard]] double operator()(double x, double y) const { return eval_(x, y); }
    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] Provenance provenance() const { return provenance_; }
    [[nodiscard]] const Fn& evaluator() const { return eval_; }

private:
    std::string name_;
    Provenance provenance_;
    Fn eval_;
};

/// x -> A(x,x). Carries no declared flags.
UnitFunction diagonal(const AggregationFunction& a);

/// Combiners for assembling A(x,y) = C(u(x), v(y)) from two univariate
/// expressions.
enum class Combiner { Min, Max, Product, Mean, BoundedSum };

std::optional<Combiner> parse_combiner(std::string_view name);
std::string_view to_string(Combiner c);

/// C(u(x), v(y)); validated eagerly.
AggregationFunction combine(Combiner c, const UnitFunction& u, const UnitFunction& v);

/// Values sampled on the (n+1)^2 grid, row-major in x then y. Grid nodes
/// are reproduced exactly; between nodes the surface is bilinear.
AggregationFunction tabulated(std::string name, std::size_t n, std::vector<double> values);

}  // namespace qhagg
