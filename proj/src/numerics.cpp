#include "qhagg/numerics.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <system_error>

namespace qhagg {

ExtNonneg::ExtNonneg(double v) : value_(v) {
    if (std::isnan(v) || v < 0.0) {
        throw DomainError("ExtNonneg: value must lie in [0, inf]");
    }
}

ExtNonneg ext_mul(ExtNonneg a, ExtNonneg b) {
    if (a.is_zero() || b.is_zero()) {
        return ExtNonneg::zero();
    }
    return ExtNonneg(a.value() * b.value());
}

ExtNonneg ext_div(ExtNonneg a, ExtNonneg b) {
    if (b.is_zero()) {
        throw DomainError("ext_div: division by zero");
    }
    if (b.is_infinite()) {
        return a.is_infinite() ? ExtNonneg(1.0) : ExtNonneg::zero();
    }
    return ExtNonneg(a.value() / b.value());
}

Grid::Grid(std::size_t n) : n_(n) {
    if (n == 0) {
        throw std::invalid_argument("grid resolution must be at least 1");
    }
    points_.reserve(n + 1);
    const auto nd = static_cast<double>(n);
    for (std::size_t i = 0; i <= n; ++i) {
        points_.push_back(static_cast<double>(i) / nd);
    }
    points_.front() = 0.0;
    points_.back() = 1.0;
}

Grid make_grid(std::size_t n) { return Grid(n); }

double bisect_increasing(const std::function<double(double)>& f, double y, double tol) {
    if (std::isnan(y)) {
        throw DomainError("bisection target is NaN");
    }
    const double f_lo = f(0.0);
    const double f_hi = f(1.0);
    if (f_lo > y + tol || f_hi < y - tol) {
        throw DomainError("bisection cannot bracket target " + format_shortest(y));
    }
    if (f_lo >= y) {
        return 0.0;
    }
    if (f_hi <= y) {
        return 1.0;
    }
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < kMaxBisectionIterations; ++it) {
        const double mid = lo + (hi - lo) / 2.0;
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double fm = f(mid);
        if (fm == y) {
            return mid;
        }
        if (fm < y) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Pick whichever end of the collapsed bracket lands closer to the target.
    return (std::abs(f(lo) - y) <= std::abs(f(hi) - y)) ? lo : hi;
}

std::optional<PowerFit> fit_power_exponent(std::span<const double> xs,
                                           std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw std::invalid_argument("fit_power_exponent: size mismatch");
    }
    double sxy = 0.0;
    double sxx = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0 && xs[i] < 1.0 && ys[i] > 0.0) || !std::isfinite(ys[i])) {
            continue;
        }
        const double lx = std::log(xs[i]);
        sxy += lx * std::log(ys[i]);
        sxx += lx * lx;
        ++used;
    }
    if (used == 0) {
        return std::nullopt;
    }
    PowerFit fit;
    fit.exponent = sxy / sxx;
    fit.points_used = used;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0 && xs[i] < 1.0 && ys[i] > 0.0) || !std::isfinite(ys[i])) {
            continue;
        }
        fit.max_abs_residual =
            std::max(fit.max_abs_residual, std::abs(ys[i] - std::pow(xs[i], fit.exponent)));
    }
    return fit;
}

std::string format_shortest(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_shortest: buffer too small");
    }
    return std::string(buf.data(), ptr);
}

std::string format_fixed_shortest(double v) {
    std::array<char, 512> buf{};
    auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_fixed_shortest: buffer too small");
    }
    return std::string(buf.data(), ptr);
}

}  // namespace qhagg
