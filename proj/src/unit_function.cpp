#include "qhagg/unit_function.hpp"

#include <algorithm>
#include <cmath>

namespace qhagg {

UnitFunction::UnitFunction(std::string name, Fn eval, UnitFlags flags, Fn inverse)
    : name_(std::move(name)), eval_(std::move(eval)), flags_(flags), inverse_(std::move(inverse)) {
    if (!eval_) {
        throw std::invalid_argument("UnitFunction: empty evaluator");
    }
    if (flags_.continuous_bijection) {
        flags_.increasing = true;
        flags_.strictly_increasing = true;
    }
    if (flags_.strictly_increasing) {
        flags_.increasing = true;
    }
    validate();
}

void UnitFunction::validate() const {
    const Grid grid(kDefaultGridResolution);
    double prev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        const double v = eval_(x);
        if (!(v >= 0.0 && v <= 1.0)) {
            throw InvalidFunction(name_ + ": value " + format_shortest(v) + " outside [0,1]", x);
        }
        if (i > 0) {
            if (flags_.increasing && v < prev) {
                throw InvalidFunction(name_ + ": declared increasing but decreases", x);
            }
            if (flags_.strictly_increasing && v <= prev) {
                throw InvalidFunction(name_ + ": declared strictly increasing but is not", x);
            }
        }
        prev = v;
    }
    if (flags_.continuous_bijection) {
        if (eval_(0.0) != 0.0) {
            throw InvalidFunction(name_ + ": declared bijection but f(0) != 0", 0.0);
        }
        if (eval_(1.0) != 1.0) {
            throw InvalidFunction(name_ + ": declared bijection but f(1) != 1", 1.0);
        }
    }
}

UnitFunction UnitFunction::from_expr(const Expr& expr, UnitFlags flags) {
    Fn inverse;
    if (auto c = expr.as_power_of_x()) {
        const double inv = 1.0 / *c;
        inverse = (*c == 1.0) ? Fn([](double y) { return y; })
                              : Fn([inv](double y) { return std::pow(y, inv); });
    }
    return UnitFunction(expr.source(), [expr](double x) { return expr.eval(x); }, flags,
                        std::move(inverse));
}

UnitFunction UnitFunction::with_flags(UnitFlags flags) const {
    return UnitFunction(name_, eval_, flags, inverse_);
}

double UnitFunction::inverse(double y, double tol) const { return invert_monotone(*this, y, tol); }

double invert_monotone(const UnitFunction& f, double y, double tol) {
    if (!f.flags().continuous_bijection) {
        throw ContractViolation("invert_monotone: '" + f.name() +
                                "' is not declared a continuous bijection");
    }
    if (!(y >= -tol && y <= 1.0 + tol)) {
        throw DomainError("invert_monotone: target " + format_shortest(y) + " outside [0,1]");
    }
    if (f.has_closed_form_inverse()) {
        return f.inverse_(std::clamp(y, 0.0, 1.0));
    }
    return bisect_increasing(f.eval_, y, tol);
}

namespace unit {

UnitFunction identity() {
    return UnitFunction("x", [](double x) { return x; }, UnitFlags::bijection(),
                        [](double y) { return y; });
}

UnitFunction power(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("unit::power: exponent must be positive and finite");
    }
    if (c == 1.0) {
        return identity();
    }
    const double inv = 1.0 / c;
    return UnitFunction("x^" + format_shortest(c), [c](double x) { return std::pow(x, c); },
                        UnitFlags::bijection(), [inv](double y) { return std::pow(y, inv); });
}

UnitFunction harmonic() {
    return UnitFunction(
        "2*x/(1+x)", [](double x) { return 2.0 * x / (1.0 + x); }, UnitFlags::bijection(),
        [](double y) { return y / (2.0 - y); });
}

UnitFunction blend_with_identity(double w, const UnitFunction& u) {
    if (!(w >= 0.0 && w <= 1.0)) {
        throw std::invalid_argument("unit::blend_with_identity: weight outside [0,1]");
    }
    UnitFlags flags = u.flags();
    return UnitFunction(format_shortest(w) + "*(" + u.name() + ")+" + format_shortest(1.0 - w) + "*x",
                        [w, u](double x) { return x + w * (u(x) - x); }, flags);
}

UnitFunction parse(std::string_view text, UnitFlags flags) {
    return UnitFunction::from_expr(parse_expr(text), flags);
}

}  // namespace unit

}  // namespace qhagg
