#include "qhagg/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace qhagg {

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::Catalog:
            return "catalog";
        case Provenance::TripleGenerated:
            return "triple-generated";
        case Provenance::ClassFlat:
            return "class-2";
        case Provenance::ClassBoundary:
            return "class-3";
        case Provenance::Expression:
            return "external expression";
        case Provenance::Tabulated:
            return "tabulated";
    }
    return "unknown";
}

AggregationReport scan_aggregation(const std::function<double(double, double)>& eval,
                                   const Grid& grid, double tol) {
    AggregationReport report;
    auto fail = [&](AggregationReport::Witness w) {
        report.passed = false;
        report.max_violation = std::max(report.max_violation, w.amount);
        if (!report.witness) {
            report.witness = std::move(w);
        }
    };

    const double a00 = eval(0.0, 0.0);
    if (!(std::abs(a00) <= tol)) {
        fail({"A(0,0)=0", 0.0, 0.0, 0.0, 0.0, std::isnan(a00) ? kInfinity : std::abs(a00)});
    }
    const double a11 = eval(1.0, 1.0);
    if (!(std::abs(a11 - 1.0) <= tol)) {
        fail({"A(1,1)=1", 1.0, 1.0, 1.0, 1.0, std::isnan(a11) ? kInfinity : std::abs(a11 - 1.0)});
    }

    const std::size_t m = grid.size();
    std::vector<double> row(m);
    std::vector<double> next_row(m);
    auto fill = [&](std::vector<double>& r, double x) {
        for (std::size_t j = 0; j < m; ++j) {
            r[j] = eval(x, grid[j]);
        }
    };
    fill(row, grid[0]);
    for (std::size_t i = 0; i < m; ++i) {
        const double x = grid[i];
        if (i + 1 < m) {
            fill(next_row, grid[i + 1]);
        }
        for (std::size_t j = 0; j < m; ++j) {
            const double y = grid[j];
            const double v = row[j];
            if (!(v >= -tol && v <= 1.0 + tol)) {
                const double amount = std::isnan(v) ? kInfinity : std::max(-v, v - 1.0);
                fail({"range", x, y, x, y, amount});
            }
            if (j + 1 < m && v > row[j + 1] + tol) {
                fail({"increasing in y", x, y, x, grid[j + 1], v - row[j + 1]});
            }
            if (i + 1 < m && v > next_row[j] + tol) {
                fail({"increasing in x", x, y, grid[i + 1], y, v - next_row[j]});
            }
        }
        std::swap(row, next_row);
    }
    return report;
}

namespace {
std::string describe(const std::string& name, const AggregationReport& report) {
    std::string msg = name + " is not an aggregation function";
    if (report.witness) {
        const auto& w = *report.witness;
        msg += ": " + w.condition + " fails at (" + format_shortest(w.x) + ", " +
               format_shortest(w.y) + ")";
    }
    return msg;
}
}  // namespace

InvalidAggregation::InvalidAggregation(const std::string& name, AggregationReport report)
    : std::invalid_argument(describe(name, report)), report_(std::move(report)) {}

AggregationFunction::AggregationFunction(std::string name, Provenance provenance, Fn eval)
    : name_(std::move(name)), provenance_(provenance), eval_(std::move(eval)) {
    if (!eval_) {
        throw std::invalid_argument("AggregationFunction: empty evaluator");
    }
}

AggregationFunction AggregationFunction::validated(std::string name, Provenance provenance,
                                                   Fn eval, double tol) {
    AggregationFunction a(std::move(name), provenance, std::move(eval));
    auto report = scan_aggregation(a.eval_, Grid(kDefaultGridResolution), tol);
    if (!report.passed) {
        throw InvalidAggregation(a.name_, std::move(report));
    }
    return a;
}

UnitFunction diagonal(const AggregationFunction& a) {
    auto eval = a.evaluator();
    return UnitFunction("diag(" + a.name() + ")", [eval](double x) { return eval(x, x); });
}

std::optional<Combiner> parse_combiner(std::string_view name) {
    if (name == "min") return Combiner::Min;
    if (name == "max") return Combiner::Max;
    if (name == "product") return Combiner::Product;
    if (name == "mean") return Combiner::Mean;
    if (name == "bounded_sum") return Combiner::BoundedSum;
    return std::nullopt;
}

std::string_view to_string(Combiner c) {
    switch (c) {
        case Combiner::Min:
            return "min";
        case Combiner::Max:
            return "max";
        case Combiner::Product:
            return "product";
        case Combiner::Mean:
            return "mean";
        case Combiner::BoundedSum:
            return "bounded_sum";
    }
    return "unknown";
}

AggregationFunction combine(Combiner c, const UnitFunction& u, const UnitFunction& v) {
    std::function<double(double, double)> op;
    switch (c) {
        case Combiner::Min:
            op = [](double a, double b) { return std::min(a, b); };
            break;
        case Combiner::Max:
            op = [](double a, double b) { return std::max(a, b); };
            break;
        case Combiner::Product:
            op = [](double a, double b) { return a * b; };
            break;
        case Combiner::Mean:
            op = [](double a, double b) { return (a + b) / 2.0; };
            break;
        case Combiner::BoundedSum:
            op = [](double a, double b) { return std::min(1.0, a + b); };
            break;
    }
    std::string name = std::string(to_string(c)) + "(" + u.name() + ", " + v.name() + ")";
    return AggregationFunction::validated(
        std::move(name), Provenance::Expression,
        [op, u, v](double x, double y) { return op(u(x), v(y)); });
}

AggregationFunction tabulated(std::string name, std::size_t n, std::vector<double> values) {
    if (n == 0) {
        throw std::invalid_argument("tabulated: resolution must be at least 1");
    }
    if (values.size() != (n + 1) * (n + 1)) {
        throw std::invalid_argument("tabulated: expected " + std::to_string((n + 1) * (n + 1)) +
                                    " values, got " + std::to_string(values.size()));
    }
    auto table = std::make_shared<const std::vector<double>>(std::move(values));
    const auto nd = static_cast<double>(n);
    auto eval = [table, n, nd](double x, double y) {
        auto locate = [n, nd](double t, std::size_t& i, double& frac) {
            const double s = std::clamp(t, 0.0, 1.0) * nd;
            i = std::min(static_cast<std::size_t>(s), n);
            frac = s - static_cast<double>(i);
            // Snap exact grid nodes: (i/n) * n can round to either side of i.
            if (i < n && t == static_cast<double>(i + 1) / nd) {
                ++i;
                frac = 0.0;
            } else if (t == static_cast<double>(i) / nd) {
                frac = 0.0;
            }
        };
        std::size_t i = 0;
        std::size_t j = 0;
        double fx = 0.0;
        double fy = 0.0;
        locate(x, i, fx);
        locate(y, j, fy);
        const auto at = [&](std::size_t a, std::size_t b) { return (*table)[a * (n + 1) + b]; };
        const double v00 = at(i, j);
        if (fx == 0.0 && fy == 0.0) {
            return v00;
        }
        const std::size_t i1 = std::min(i + 1, n);
        const std::size_t j1 = std::min(j + 1, n);
        const double v10 = at(i1, j);
        const double v01 = at(i, j1);
        const double v11 = at(i1, j1);
        // std::lerp is exact at both ends and monotone in t, so cell borders
        // agree and monotone tables stay monotone.
        return std::lerp(std::lerp(v00, v10, fx), std::lerp(v01, v11, fx), fy);
    };
    return AggregationFunction::validated(std::move(name), Provenance::Tabulated, std::move(eval));
}

}  // namespace qhagg
