#include "qhagg/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "qhagg/construct.hpp"

namespace qhagg {

const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries = {
        {"min", {}, "minimum; homogeneous of order 1"},
        {"max", {}, "maximum; homogeneous of order 1"},
        {"product", {}, "x*y; diagonal x^2"},
        {"drastic", {}, "drastic product T_D: min(x,y) if max(x,y)=1, else 0"},
        {"harmonic_min", {}, "2xy/(x+y) if x<=y, y otherwise; generated by (x, x, 2x/(1+x))"},
        {"flat", {"alpha", "beta"}, "1 on (0,1]^2, alpha on x=0, beta on y=0"},
        {"boundary_only", {"g", "h"}, "0 on [0,1)^2, g(y) on x=1, h(x) on y=1"},
    };
    return entries;
}

namespace {

void require_params(std::string_view name, const CatalogParams& params,
                    const std::vector<std::string>& expected) {
    for (const auto& key : expected) {
        if (!params.contains(key)) {
            throw CatalogError(std::string(name) + ": missing parameter '" + key + "'");
        }
    }
    for (const auto& [key, value] : params) {
        if (std::find(expected.begin(), expected.end(), key) == expected.end()) {
            throw CatalogError(std::string(name) + ": unexpected parameter '" + key + "'");
        }
    }
}

double unit_number(std::string_view name, const CatalogParams& params, const std::string& key) {
    const std::string& text = params.find(key)->second;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw CatalogError(std::string(name) + ": parameter '" + key + "' is not a number");
    }
    if (!(v >= 0.0 && v <= 1.0)) {
        throw CatalogError(std::string(name) + ": parameter '" + key + "' must lie in [0,1]");
    }
    return v;
}

UnitFunction section(std::string_view name, const CatalogParams& params, const std::string& key) {
    try {
        return unit::parse(params.find(key)->second, UnitFlags::monotone());
    } catch (const std::exception& e) {
        throw CatalogError(std::string(name) + ": parameter '" + key + "': " + e.what());
    }
}

}  // namespace

AggregationFunction catalog_lookup(std::string_view name, const CatalogParams& params) {
    const auto& entries = catalog_entries();
    auto it = std::find_if(entries.begin(), entries.end(),
                           [&](const CatalogEntry& e) { return e.name == name; });
    if (it == entries.end()) {
        throw CatalogError("unknown catalog entry '" + std::string(name) + "'");
    }
    require_params(name, params, it->params);

    if (name == "min") {
        return {"min", Provenance::Catalog, [](double x, double y) { return std::min(x, y); }};
    }
    if (name == "max") {
        return {"max", Provenance::Catalog, [](double x, double y) { return std::max(x, y); }};
    }
    if (name == "product") {
        return {"product", Provenance::Catalog, [](double x, double y) { return x * y; }};
    }
    if (name == "drastic") {
        return {"drastic", Provenance::Catalog, [](double x, double y) {
                    return (x == 1.0 || y == 1.0) ? std::min(x, y) : 0.0;
                }};
    }
    if (name == "harmonic_min") {
        return {"harmonic_min", Provenance::Catalog, [](double x, double y) {
                    if (x == y) {
                        return x;  // 2x^2/(2x) is not always exactly x in floating point
                    }
                    if (x < y) {
                        return 2.0 * x * y / (x + y);
                    }
                    return y;
                }};
    }
    if (name == "flat") {
        auto a = class_flat(unit_number(name, params, "alpha"), unit_number(name, params, "beta"));
        return {a.name(), Provenance::Catalog, a.evaluator()};
    }
    try {
        auto a = class_boundary(section(name, params, "g"), section(name, params, "h"));
        return {a.name(), Provenance::Catalog, a.evaluator()};
    } catch (const InvalidFunction& e) {
        throw CatalogError(std::string(name) + ": " + e.what());
    }
}

}  // namespace qhagg
