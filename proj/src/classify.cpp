#include <cmath>
#include <stdexcept>

#include "qhagg/verify.hpp"

namespace qhagg {

int ClassificationReport::class_number() const {
    switch (verdict.index()) {
        case 0:
            return 1;
        case 1:
            return 2;
        case 2:
            return 3;
        default:
            return 0;
    }
}

namespace {

std::string describe_delta(const Class1& c) {
    if (!c.delta_fit) {
        return "delta=" + c.delta.name() + " (sampled)";
    }
    const double rounded = std::round(c.delta_fit->exponent * 1e6) / 1e6;
    if (rounded == 1.0) {
        return "delta=x (fitted)";
    }
    return "delta=x^" + format_shortest(rounded) + " (fitted)";
}

}  // namespace

std::string ClassificationReport::summary() const {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Class1>) {
                return "Class1 " + describe_delta(v);
            } else if constexpr (std::is_same_v<T, Class2>) {
                return "Class2 alpha=" + format_shortest(v.alpha) +
                       " beta=" + format_shortest(v.beta);
            } else if constexpr (std::is_same_v<T, Class3>) {
                return "Class3 g=" + v.g.name() + " h=" + v.h.name();
            } else {
                std::string s = "NotQuasiHomogeneous check=\"" + v.failed_check + "\"";
                if (v.lambda) {
                    s += " lambda=" + format_shortest(*v.lambda);
                }
                s += " x=" + format_shortest(v.x) + " y=" + format_shortest(v.y) +
                     " residual=" + format_shortest(v.residual);
                return s;
            }
        },
        verdict);
}

namespace {

/// Compare A with a reference formula at every grid pair.
std::optional<NotQuasiHomogeneous> match_formula(const AggregationFunction& a,
                                                 const std::function<double(double, double)>& ref,
                                                 const Grid& grid, double tol,
                                                 const std::string& check, double& max_residual) {
    std::optional<NotQuasiHomogeneous> first;
    for (double x : grid) {
        for (double y : grid) {
            const double r = std::abs(a(x, y) - ref(x, y));
            const double residual = std::isnan(r) ? kInfinity : r;
            max_residual = std::max(max_residual, residual);
            if (residual > tol && !first) {
                first = NotQuasiHomogeneous{check, std::nullopt, x, y, residual};
            }
        }
    }
    return first;
}

UnitFunction boundary_section(const AggregationFunction& a, bool first_arg_fixed) {
    auto eval = a.evaluator();
    if (first_arg_fixed) {
        return UnitFunction(a.name() + "(1,x)", [eval](double x) { return eval(1.0, x); });
    }
    return UnitFunction(a.name() + "(x,1)", [eval](double x) { return eval(x, 1.0); });
}

}  // namespace

ClassificationReport classify(const AggregationFunction& a, const Grid& grid, double tol) {
    ClassificationReport report{NotQuasiHomogeneous{}, {}, grid.resolution(), tol};

    const auto agg = check_aggregation(a, grid, tol);
    report.diagnostics["aggregation.max_violation"] = agg.max_violation;
    if (!agg.passed) {
        const auto& w = *agg.witness;
        report.verdict =
            NotQuasiHomogeneous{"aggregation: " + w.condition, std::nullopt, w.x, w.y, w.amount};
        return report;
    }

    bool interior_one = grid.size() > 2;
    bool interior_zero = grid.size() > 2;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double d = a(grid[i], grid[i]);
        interior_one = interior_one && std::abs(d - 1.0) <= tol;
        interior_zero = interior_zero && std::abs(d) <= tol;
    }

    if (interior_one) {
        const double alpha = a(0.0, 1.0);
        const double beta = a(1.0, 0.0);
        auto formula = [alpha, beta](double x, double y) {
            if (x == 0.0 && y == 0.0) return 0.0;
            if (x == 0.0) return alpha;
            if (y == 0.0) return beta;
            return 1.0;
        };
        double max_res = 0.0;
        auto miss = match_formula(a, formula, grid, tol, "class-2 representation", max_res);
        report.diagnostics["class2.max_residual"] = max_res;
        report.verdict = miss ? Verdict{*miss} : Verdict{Class2{alpha, beta}};
        return report;
    }

    if (interior_zero) {
        auto g = boundary_section(a, true);
        auto h = boundary_section(a, false);
        auto formula = [g, h](double x, double y) {
            if (x == 1.0 && y == 1.0) return 1.0;
            if (x == 1.0) return g(y);
            if (y == 1.0) return h(x);
            return 0.0;
        };
        double max_res = 0.0;
        auto miss = match_formula(a, formula, grid, tol, "class-3 representation", max_res);
        report.diagnostics["class3.max_residual"] = max_res;
        if (miss) {
            report.verdict = *miss;
        } else {
            report.verdict = Class3{std::move(g), std::move(h)};
        }
        return report;
    }

    const UnitFunction raw_delta = diagonal(a);
    const auto diag = diagonal_bijection_check(raw_delta, grid, tol);
    report.diagnostics["diagonal.max_jump"] = diag.max_jump;
    if (!diag.passed) {
        if (!diag.endpoints_ok) {
            const bool at_zero = std::abs(raw_delta(0.0)) > tol;
            const double x = at_zero ? 0.0 : 1.0;
            report.verdict = NotQuasiHomogeneous{"diagonal endpoints", std::nullopt, x, x,
                                                 std::abs(raw_delta(x) - (at_zero ? 0.0 : 1.0))};
        } else if (diag.first_non_increase) {
            const auto [x0, x1] = *diag.first_non_increase;
            report.verdict = NotQuasiHomogeneous{"diagonal strictly increasing", std::nullopt, x0,
                                                 x1, raw_delta(x0) - raw_delta(x1)};
        } else {
            const auto [x0, x1] = diag.max_jump_at;
            report.verdict = NotQuasiHomogeneous{"diagonal continuity", std::nullopt, x0, x1,
                                                 diag.max_jump};
        }
        return report;
    }

    std::optional<UnitFunction> delta;
    try {
        delta = raw_delta.with_flags(UnitFlags::bijection());
    } catch (const InvalidFunction& e) {
        report.verdict = NotQuasiHomogeneous{"diagonal bijection (default grid)", std::nullopt,
                                             e.at(), e.at(), kInfinity};
        return report;
    }

    auto eval = a.evaluator();
    const UnitFunction& d = *delta;
    auto normalised = [eval, d](double x, double y) { return d.inverse(eval(x, y)); };
    const auto homog = check_homogeneous_order(normalised, 1.0, grid, tol);
    report.diagnostics["homogeneity.max_residual"] = homog.max_residual;
    if (!homog.passed) {
        const auto& w = *homog.witness;
        report.verdict = NotQuasiHomogeneous{"delta^-1 o A homogeneous of order 1", w.lambda, w.x,
                                             w.y, w.residual};
        return report;
    }

    std::vector<double> xs(grid.begin(), grid.end());
    std::vector<double> ys;
    ys.reserve(xs.size());
    for (double x : xs) {
        ys.push_back(d(x));
    }
    auto fit = fit_power_exponent(xs, ys);
    if (fit && fit->max_abs_residual > kClosedFormTol) {
        fit.reset();
    }
    report.verdict = Class1{d, fit};
    return report;
}

std::pair<PhiSpec, PsiSpec> canonical_pair(const ClassificationReport& report) {
    return std::visit(
        [](const auto& v) -> std::pair<PhiSpec, PsiSpec> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Class1>) {
                return {PhiSpec::inverse_of(v.delta), PsiPower{1.0}};
            } else if constexpr (std::is_same_v<T, Class2>) {
                return {PhiSpec::scaled(unit::identity()), PsiStepAtZero{}};
            } else if constexpr (std::is_same_v<T, Class3>) {
                return {PhiSpec::scaled(unit::identity()), PsiStepAtOne{}};
            } else {
                throw std::invalid_argument("canonical_pair: function is not quasi-homogeneous");
            }
        },
        report.verdict);
}

}  // namespace qhagg
