#include <cmath>
#include <stdexcept>

#include "qhagg/verify.hpp"

namespace qhagg {

PsiSpec psi_power(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("psi power exponent must be positive and finite");
    }
    return PsiPower{c};
}

double psi_value(const PsiSpec& psi, double x) {
    return std::visit(
        [x](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, PsiPower>) {
                return p.c == 1.0 ? x : std::pow(x, p.c);
            } else if constexpr (std::is_same_v<T, PsiStepAtZero>) {
                return x > 0.0 ? 1.0 : 0.0;
            } else {
                return x >= 1.0 ? 1.0 : 0.0;
            }
        },
        psi);
}

std::string to_string(const PsiSpec& psi) {
    return std::visit(
        [](const auto& p) -> std::string {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, PsiPower>) {
                return "power:c=" + format_shortest(p.c);
            } else if constexpr (std::is_same_v<T, PsiStepAtZero>) {
                return "step0";
            } else {
                return "step1";
            }
        },
        psi);
}

PhiSpec::PhiSpec(std::string name, ExtNonneg b, Fn forward, Fn inverse)
    : name_(std::move(name)), b_(b), forward_(std::move(forward)), inverse_(std::move(inverse)) {
    if (!forward_) {
        throw std::invalid_argument("PhiSpec: empty forward map");
    }
    if (b_.is_zero()) {
        throw std::invalid_argument("PhiSpec: b must be positive");
    }
    validate();
}

void PhiSpec::validate() const {
    const Grid grid(kDefaultGridResolution);
    double prev = -1.0;
    for (double x : grid) {
        const double v = (*this)(x).value();
        if (x == 0.0 && v != 0.0) {
            throw InvalidFunction(name_ + ": phi(0) must be 0", x);
        }
        if (x < 1.0 && !std::isfinite(v)) {
            throw InvalidFunction(name_ + ": phi must be finite on [0,1)", x);
        }
        if (!(v > prev)) {
            throw InvalidFunction(name_ + ": phi must be strictly increasing", x);
        }
        prev = v;
    }
    if (!b_.is_infinite() && forward_(1.0) != b_.value()) {
        throw InvalidFunction(name_ + ": phi(1) must equal b = " + format_shortest(b_.value()), 1.0);
    }
}

ExtNonneg PhiSpec::operator()(double x) const {
    if (x >= 1.0 && b_.is_infinite()) {
        return ExtNonneg::infinity();
    }
    return ExtNonneg(forward_(x));
}

double PhiSpec::inverse(ExtNonneg t) const {
    if (t.is_infinite()) {
        if (!b_.is_infinite()) {
            throw DomainError(name_ + ": phi^{-1}(inf) undefined for finite b");
        }
        return 1.0;
    }
    if (inverse_) {
        return inverse_(t.value());
    }
    return bisect_increasing([this](double x) { return (*this)(x).value(); }, t.value());
}

double PhiSpec::rescale(double a, ExtNonneg s) const {
    if (s.value() == 1.0) {
        return a;
    }
    return inverse(ext_mul(s, (*this)(a)));
}

PhiSpec PhiSpec::scaled(const UnitFunction& u, double scale) {
    if (!u.flags().continuous_bijection) {
        throw ContractViolation("PhiSpec::scaled: '" + u.name() + "' is not a declared bijection");
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw std::invalid_argument("PhiSpec::scaled: scale must be positive and finite");
    }
    std::string name = scale == 1.0 ? u.name() : format_shortest(scale) + "*(" + u.name() + ")";
    if (scale == 1.0) {
        return PhiSpec(std::move(name), ExtNonneg(1.0), [u](double x) { return u(x); },
                       [u](double t) { return u.inverse(std::min(t, 1.0)); });
    }
    return PhiSpec(
        std::move(name), ExtNonneg(scale), [u, scale](double x) { return scale * u(x); },
        [u, scale](double t) { return u.inverse(std::min(t / scale, 1.0)); });
}

PhiSpec PhiSpec::inverse_of(const UnitFunction& f) {
    if (!f.flags().continuous_bijection) {
        throw ContractViolation("PhiSpec::inverse_of: '" + f.name() + "' is not a declared bijection");
    }
    return PhiSpec("inv(" + f.name() + ")", ExtNonneg(1.0), [f](double x) { return f.inverse(x); },
                   [f](double t) { return f(std::min(t, 1.0)); });
}

PhiSpec PhiSpec::power_of_inverse(const UnitFunction& delta, double c) {
    if (!delta.flags().continuous_bijection) {
        throw ContractViolation("PhiSpec::power_of_inverse: '" + delta.name() +
                                "' is not a declared bijection");
    }
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("PhiSpec::power_of_inverse: exponent must be positive");
    }
    const double inv_c = 1.0 / c;
    return PhiSpec(
        "inv(" + delta.name() + ")^" + format_shortest(c), ExtNonneg(1.0),
        [delta, c](double x) { return std::pow(delta.inverse(x), c); },
        [delta, inv_c](double t) { return delta(std::min(std::pow(t, inv_c), 1.0)); });
}

PhiSpec PhiSpec::unbounded_from(const UnitFunction& u) {
    if (!u.flags().continuous_bijection) {
        throw ContractViolation("PhiSpec::unbounded_from: '" + u.name() +
                                "' is not a declared bijection");
    }
    return PhiSpec(
        "(" + u.name() + ")/(1-(" + u.name() + "))", ExtNonneg::infinity(),
        [u](double x) {
            const double v = u(x);
            return v / (1.0 - v);
        },
        [u](double t) { return u.inverse(t / (1.0 + t)); });
}

PhiSpec PhiSpec::from_expr(const Expr& expr, std::optional<ExtNonneg> b) {
    auto forward = [expr](double x) { return expr.eval(x); };
    if (b && b->is_infinite()) {
        return PhiSpec(expr.source(), *b, forward);
    }
    const double at_one = expr.eval(1.0);
    if (!(at_one > 0.0) || !std::isfinite(at_one)) {
        throw InvalidFunction(expr.source() + ": phi(1) must be positive and finite", 1.0);
    }
    if (b && b->value() != at_one) {
        throw InvalidFunction(expr.source() + ": phi(1) = " + format_shortest(at_one) +
                                  " but b = " + format_shortest(b->value()),
                              1.0);
    }
    PhiSpec::Fn inverse;
    if (auto c = expr.as_power_of_x()) {
        const double inv = 1.0 / *c;
        inverse = [inv](double t) { return std::pow(std::min(t, 1.0), inv); };
    }
    return PhiSpec(expr.source(), ExtNonneg(at_one), forward, inverse);
}

}  // namespace qhagg
