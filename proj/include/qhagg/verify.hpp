#pragma once

// Grid-based checks of the quasi-homogeneity equation
//
//   A(lambda*x, lambda*y) = phi^{-1}( psi(lambda) * phi(A(x,y)) )
//
// and of the structure it forces on phi, psi and the diagonal, plus the
// three-way classification. Every verdict is relative to the sampled grid
// and tolerance; nothing here is a proof.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qhagg/aggregation.hpp"
#include "qhagg/numerics.hpp"
#include "qhagg/unit_function.hpp"

namespace qhagg {

// ---------------------------------------------------------------------------
// psi: the three monotone multiplicative maps of [0,1] fixing 0 and 1.

struct PsiPower {
    double c = 1.0;
};
/// 0 at 0, 1 on (0,1].
struct PsiStepAtZero {};
/// 0 on [0,1), 1 at 1.
struct PsiStepAtOne {};

using PsiSpec = std::variant<PsiPower, PsiStepAtZero, PsiStepAtOne>;

PsiSpec psi_power(double c);
double psi_value(const PsiSpec& psi, double x);
std::string to_string(const PsiSpec& psi);

// ---------------------------------------------------------------------------
// phi: increasing bijection [0,1] -> [0,b], b in (0, inf].

class PhiSpec {
public:
    using Fn = std::function<double(double)>;

    /// `forward` is consulted on [0,1) only when b is infinite (phi(1) = inf
    /// by definition). Without `inverse`, phi^{-1} is found by bisection.
    /// Validated on the default grid: phi(0) = 0, strictly increasing,
    /// phi(1) = b.
    PhiSpec(std::string name, ExtNonneg b, Fn forward, Fn inverse = {});

    /// scale * u for a declared bijection u; b = scale.
    static PhiSpec scaled(const UnitFunction& u, double scale = 1.0);
    /// f^{-1}, whose inverse is f itself; b = 1.
    static PhiSpec inverse_of(const UnitFunction& f);
    /// (delta^{-1})^c with inverse t -> delta(t^{1/c}); b = 1.
    static PhiSpec power_of_inverse(const UnitFunction& delta, double c);
    /// u / (1 - u) for a declared bijection u; b = inf.
    static PhiSpec unbounded_from(const UnitFunction& u);
    /// Parse an expression for phi. With `b` empty, b = phi(1) (finite).
    /// With b = inf the expression is only evaluated on [0,1).
    static PhiSpec from_expr(const Expr& expr, std::optional<ExtNonneg> b = std::nullopt);

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] ExtNonneg b() const { return b_; }
    [[nodiscard]] bool has_closed_form_inverse() const { return static_cast<bool>(inverse_); }

    [[nodiscard]] ExtNonneg operator()(double x) const;
    [[nodiscard]] double inverse(ExtNonneg t) const;

    /// phi^{-1}(s * phi(a)) using 0 * inf = 0. For s = 1 this is a exactly.
    [[nodiscard]] double rescale(double a, ExtNonneg s) const;

private:
    void validate() const;

    std::string name_;
    ExtNonneg b_;
    Fn forward_;
    Fn inverse_;
};

// ---------------------------------------------------------------------------
// Checks

struct GridWitness {
    double lambda = 0.0;
    double x = 0.0;
    double y = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};

/// Max residual over a grid sweep; the witness is the first point in
/// (lambda, x, y) grid order whose residual exceeds tol.
struct ResidualReport {
    bool passed = true;
    double max_residual = 0.0;
    double tol = 0.0;
    std::size_t points = 0;
    std::optional<GridWitness> witness;
};

AggregationReport check_aggregation(const AggregationFunction& a, const Grid& grid, double tol);

/// Sweeps grid^3, evaluating psi(lambda)*phi(A(x,y)) in [0, inf].
ResidualReport check_quasi_homogeneity(const AggregationFunction& a, const PhiSpec& phi,
                                       const PsiSpec& psi, const Grid& grid, double tol);

/// psi(lambda * x) = psi(lambda) * psi(x) over grid^2. The witness has
/// y = 0; lhs/rhs are the two sides.
ResidualReport check_multiplicative(const std::function<double(double)>& psi, const Grid& grid,
                                    double tol);
ResidualReport check_multiplicative(const PsiSpec& psi, const Grid& grid, double tol);

/// F(lambda*x, lambda*y) = lambda^k * F(x,y) over grid^3.
ResidualReport check_homogeneous_order(const std::function<double(double, double)>& f, double k,
                                       const Grid& grid, double tol);

/// psi(lambda) = phi(delta_A(lambda)) / phi(1), sampled on the grid, with
/// the best-matching PsiSpec. Steps are recognised when every interior
/// sample is 0 (StepAtOne) or 1 (StepAtZero); otherwise x^c is fitted in
/// log-log space at lambda = 0.1, ..., 0.9. `fit` is empty when the
/// residual over all samples exceeds fit_tol.
struct PsiRecovery {
    std::vector<double> lambdas;
    std::vector<double> samples;
    std::optional<PsiSpec> fit;
    double fit_residual = 0.0;
    std::string note;
};

PsiRecovery recover_psi(const AggregationFunction& a, const PhiSpec& phi, const Grid& grid,
                        double fit_tol = 1e-6);

/// delta(0) = 0 and delta(1) = 1 within tol, strictly increasing samples,
/// and no jump between neighbouring samples above gap_tol (default 10/n).
/// The jump test is a continuity heuristic and is skipped when delta is
/// declared a continuous bijection.
struct DiagonalReport {
    bool passed = true;
    bool endpoints_ok = true;
    bool strictly_increasing = true;
    bool continuity_declared = false;
    double gap_tol = 0.0;
    double max_jump = 0.0;
    std::pair<double, double> max_jump_at{0.0, 0.0};
    std::optional<std::pair<double, double>> first_non_increase;
};

DiagonalReport diagonal_bijection_check(const UnitFunction& delta, const Grid& grid, double tol,
                                        std::optional<double> gap_tol = std::nullopt);

// ---------------------------------------------------------------------------
// Classification

struct Class1 {
    UnitFunction delta;                 // declared bijection
    std::optional<PowerFit> delta_fit;  // set when delta matches x^c on the grid
};
struct Class2 {
    double alpha = 0.0;
    double beta = 0.0;
};
struct Class3 {
    UnitFunction g;
    UnitFunction h;
};
struct NotQuasiHomogeneous {
    std::string failed_check;
    std::optional<double> lambda;  // absent for two-point witnesses
    double x = 0.0;
    double y = 0.0;
    double residual = 0.0;
};

using Verdict = std::variant<Class1, Class2, Class3, NotQuasiHomogeneous>;

struct ClassificationReport {
    Verdict verdict;
    std::map<std::string, double> diagnostics;  // per-check residual maxima
    std::size_t grid_resolution = 0;
    double tol = 0.0;

    /// 1, 2, 3, or 0 for NotQuasiHomogeneous.
    [[nodiscard]] int class_number() const;
    [[nodiscard]] bool quasi_homogeneous() const { return class_number() != 0; }
    /// e.g. "Class1 delta=x^2 (fitted)", "Class2 alpha=0.2 beta=0.7".
    [[nodiscard]] std::string summary() const;
};

inline constexpr double kClosedFormTol = 1e-9;
inline constexpr double kBisectionTol = 1e-6;

/// (a) interior diagonal identically 1 -> class 2 candidate;
/// (b) interior diagonal identically 0 -> class 3 candidate;
/// (c) otherwise the diagonal must be a bijection and delta^{-1} o A
///     homogeneous of order 1 -> class 1.
/// A must first pass check_aggregation. Any failed verification yields
/// NotQuasiHomogeneous with the first witness in grid order.
ClassificationReport classify(const AggregationFunction& a, const Grid& grid,
                              double tol = kBisectionTol);

/// The normalised (phi, psi) for a verdict: (delta^{-1}, x) for class 1,
/// (identity, step at 0) for class 2, (identity, step at 1) for class 3.
/// Throws std::invalid_argument for NotQuasiHomogeneous.
std::pair<PhiSpec, PsiSpec> canonical_pair(const ClassificationReport& report);

}  // namespace qhagg
