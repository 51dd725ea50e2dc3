#include "qhagg/construct.hpp"

#include <algorithm>
#include <cmath>

namespace qhagg {

bool TripleReport::passed() const {
    return std::all_of(conditions.begin(), conditions.end(),
                       [](const TripleCondition& c) { return c.passed; });
}

const TripleCondition* TripleReport::first_failure() const {
    for (const auto& c : conditions) {
        if (!c.passed) {
            return &c;
        }
    }
    return nullptr;
}

const TripleCondition* TripleReport::find(std::string_view name) const {
    for (const auto& c : conditions) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

namespace {

std::optional<UnitFunction> as_bijection(const UnitFunction& f) {
    if (f.flags().continuous_bijection) {
        return f;
    }
    try {
        return f.with_flags(UnitFlags::bijection());
    } catch (const InvalidFunction&) {
        return std::nullopt;
    }
}

TripleCondition check_bijection(const UnitFunction& f, const Grid& grid) {
    TripleCondition c{std::string(triple_condition::kFBijection), true, std::nullopt, {}};
    if (f.flags().continuous_bijection) {
        return c;
    }
    auto fail = [&](double x, std::string detail) {
        c.passed = false;
        c.witness = std::pair{x, x};
        c.detail = std::move(detail);
        return c;
    };
    if (f(0.0) != 0.0) {
        return fail(0.0, "f(0) = " + format_shortest(f(0.0)));
    }
    if (f(1.0) != 1.0) {
        return fail(1.0, "f(1) = " + format_shortest(f(1.0)));
    }
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (!(f(grid[i]) < f(grid[i + 1]))) {
            c.passed = false;
            c.witness = std::pair{grid[i], grid[i + 1]};
            c.detail = "f not strictly increasing";
            return c;
        }
    }
    // The grid passed; the declaration is re-validated on the default grid.
    if (!as_bijection(f)) {
        c.passed = false;
        c.detail = "f not strictly increasing on the default grid";
    }
    return c;
}

TripleCondition check_increasing(std::string_view name, const UnitFunction& u, const Grid& grid,
                                 double tol) {
    TripleCondition c{std::string(name), true, std::nullopt, {}};
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (u(grid[i]) > u(grid[i + 1]) + tol) {
            c.passed = false;
            c.witness = std::pair{grid[i], grid[i + 1]};
            c.detail = u.name() + " decreases";
            break;
        }
    }
    return c;
}

TripleCondition check_at_one(std::string_view name, const UnitFunction& u) {
    TripleCondition c{std::string(name), true, std::nullopt, {}};
    const double v = u(1.0);
    if (v != 1.0) {
        c.passed = false;
        c.witness = std::pair{1.0, 1.0};
        c.detail = u.name() + " at 1 is " + format_shortest(v);
    }
    return c;
}

TripleCondition check_ratio(std::string_view name, const std::optional<UnitFunction>& f,
                            const UnitFunction& u, const Grid& grid, double tol) {
    TripleCondition c{std::string(name), true, std::nullopt, {}};
    if (!f) {
        c.passed = false;
        c.detail = "needs f to be an increasing bijection";
        return c;
    }
    auto ratio = [&](double x) { return f->inverse(u(x)) / x; };
    double prev = ratio(grid[1]);
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double next = ratio(grid[i + 1]);
        if (prev < next - tol) {
            c.passed = false;
            c.witness = std::pair{grid[i], grid[i + 1]};
            c.detail = "ratio rises from " + format_shortest(prev) + " to " + format_shortest(next);
            break;
        }
        prev = next;
    }
    return c;
}

AggregationFunction make_generated(std::string name, Provenance provenance, const UnitFunction& f,
                                   const UnitFunction& g, const UnitFunction& h) {
    return AggregationFunction(std::move(name), provenance, [f, g, h](double x, double y) {
        if (x == 0.0 && y == 0.0) {
            return 0.0;
        }
        if (x <= y) {
            return f(y * f.inverse(h(x / y)));
        }
        return f(x * f.inverse(g(y / x)));
    });
}

std::string triple_name(const GeneratorTriple& t) {
    return "triple(f=" + t.f.name() + ", g=" + t.g.name() + ", h=" + t.h.name() + ")";
}

void require_boundary_section(const UnitFunction& u, const char* which) {
    const Grid grid(kDefaultGridResolution);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (u(grid[i]) > u(grid[i + 1])) {
            throw InvalidFunction(std::string(which) + " must be increasing", grid[i]);
        }
    }
    if (u(1.0) != 1.0) {
        throw InvalidFunction(std::string(which) + "(1) must equal 1", 1.0);
    }
}

}  // namespace

TripleReport validate_triple(const GeneratorTriple& t, const Grid& grid, double tol) {
    namespace tc = triple_condition;
    TripleReport report;
    auto bij = check_bijection(t.f, grid);
    std::optional<UnitFunction> f = bij.passed ? as_bijection(t.f) : std::nullopt;
    report.conditions.push_back(std::move(bij));
    report.conditions.push_back(check_increasing(tc::kGIncreasing, t.g, grid, tol));
    report.conditions.push_back(check_increasing(tc::kHIncreasing, t.h, grid, tol));
    report.conditions.push_back(check_at_one(tc::kGAtOne, t.g));
    report.conditions.push_back(check_at_one(tc::kHAtOne, t.h));
    report.conditions.push_back(check_ratio(tc::kHRatio, f, t.h, grid, tol));
    report.conditions.push_back(check_ratio(tc::kGRatio, f, t.g, grid, tol));
    return report;
}

namespace {
std::string describe(const TripleReport& report) {
    const auto* c = report.first_failure();
    if (!c) {
        return "invalid triple";
    }
    std::string msg = "invalid triple: " + c->name + " fails";
    if (c->witness) {
        msg += " at (" + format_shortest(c->witness->first) + ", " +
               format_shortest(c->witness->second) + ")";
    }
    if (!c->detail.empty()) {
        msg += ": " + c->detail;
    }
    return msg;
}
}  // namespace

InvalidTriple::InvalidTriple(TripleReport report)
    : std::invalid_argument(describe(report)), report_(std::move(report)) {}

AggregationFunction from_triple(const GeneratorTriple& t) {
    auto report = validate_triple(t, Grid(kDefaultGridResolution));
    if (!report.passed()) {
        throw InvalidTriple(std::move(report));
    }
    return make_generated(triple_name(t), Provenance::TripleGenerated, *as_bijection(t.f), t.g,
                          t.h);
}

AggregationFunction triple_formula(const GeneratorTriple& t) {
    auto f = as_bijection(t.f);
    if (!f) {
        throw ContractViolation("triple_formula: f must be an increasing bijection");
    }
    return make_generated("formula" + triple_name(t).substr(6), Provenance::Expression, *f, t.g,
                          t.h);
}

AggregationFunction class_flat(double alpha, double beta) {
    if (!(alpha >= 0.0 && alpha <= 1.0) || !(beta >= 0.0 && beta <= 1.0)) {
        throw std::invalid_argument("class_flat: alpha and beta must lie in [0,1]");
    }
    return AggregationFunction(
        "flat(alpha=" + format_shortest(alpha) + ", beta=" + format_shortest(beta) + ")",
        Provenance::ClassFlat, [alpha, beta](double x, double y) {
            if (x == 0.0 && y == 0.0) {
                return 0.0;
            }
            if (x == 0.0) {
                return alpha;
            }
            if (y == 0.0) {
                return beta;
            }
            return 1.0;
        });
}

AggregationFunction class_boundary(const UnitFunction& g, const UnitFunction& h) {
    require_boundary_section(g, "g");
    require_boundary_section(h, "h");
    return AggregationFunction("boundary(g=" + g.name() + ", h=" + h.name() + ")",
                               Provenance::ClassBoundary, [g, h](double x, double y) {
                                   if (x == 1.0 && y == 1.0) {
                                       return 1.0;
                                   }
                                   if (x == 1.0) {
                                       return g(y);
                                   }
                                   if (y == 1.0) {
                                       return h(x);
                                   }
                                   return 0.0;
                               });
}

GeneratorTriple triple_of(const AggregationFunction& a) {
    auto eval = a.evaluator();
    return GeneratorTriple{
        diagonal(a),
        UnitFunction(a.name() + "(1,x)", [eval](double x) { return eval(1.0, x); }),
        UnitFunction(a.name() + "(x,1)", [eval](double x) { return eval(x, 1.0); }),
    };
}

}  // namespace qhagg
