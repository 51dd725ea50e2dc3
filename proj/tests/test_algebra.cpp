#include <gtest/gtest.h>

#include <cmath>

#include "qhagg/aggregation.hpp"
#include "qhagg/catalog.hpp"
#include "qhagg/construct.hpp"
#include "qhagg/verify.hpp"
#include "support/oracles.hpp"

namespace qhagg {
namespace {

const Grid& default_grid() {
    static const Grid grid(kDefaultGridResolution);
    return grid;
}

CatalogParams flat_params() { return {{"alpha", "0.2"}, {"beta", "0.7"}}; }
CatalogParams boundary_params() { return {{"g", "x^2"}, {"h", "x"}}; }

TEST(Diagonal, OfMinIsIdentity) {
    const auto d = diagonal(catalog_lookup("min"));
    for (double x : default_grid()) {
        EXPECT_EQ(d(x), x);
    }
}

TEST(Diagonal, OfProductIsSquare) {
    const auto d = diagonal(catalog_lookup("product"));
    EXPECT_EQ(d(0.5), 0.25);
    for (double x : default_grid()) {
        EXPECT_EQ(d(x), x * x);
    }
}

TEST(Diagonal, OfDrasticIsStep) {
    const auto d = diagonal(catalog_lookup("drastic"));
    for (double x : default_grid()) {
        EXPECT_EQ(d(x), x < 1.0 ? 0.0 : 1.0);
    }
}

TEST(Diagonal, CarriesNoFlags) {
    const auto f = diagonal(catalog_lookup("min")).flags();
    EXPECT_FALSE(f.increasing || f.strictly_increasing || f.continuous_bijection);
}

TEST(Catalog, Examples) {
    EXPECT_DOUBLE_EQ(catalog_lookup("harmonic_min")(0.3, 0.6), 2 * 0.3 * 0.6 / (0.3 + 0.6));
    EXPECT_EQ(catalog_lookup("drastic")(1.0, 0.7), 0.7);
    EXPECT_EQ(catalog_lookup("flat", flat_params())(0.0, 0.5), 0.2);
    EXPECT_EQ(catalog_lookup("boundary_only", boundary_params())(1.0, 0.5), 0.25);
}

TEST(Catalog, ClosedFormsMatchOracles) {
    const auto hm = catalog_lookup("harmonic_min");
    const auto td = catalog_lookup("drastic");
    for (double x : default_grid()) {
        for (double y : default_grid()) {
            EXPECT_DOUBLE_EQ(hm(x, y), testing::oracle_harmonic_min(x, y));
            EXPECT_EQ(td(x, y), testing::oracle_drastic(x, y));
        }
    }
}

TEST(Catalog, EveryEntryIsAnAggregationFunction) {
    for (const auto& entry : catalog_entries()) {
        CatalogParams params;
        if (entry.name == "flat") {
            params = flat_params();
        } else if (entry.name == "boundary_only") {
            params = boundary_params();
        }
        const auto a = catalog_lookup(entry.name, params);
        const auto report = check_aggregation(a, default_grid(), 0.0);
        EXPECT_TRUE(report.passed) << entry.name;
        EXPECT_EQ(report.max_violation, 0.0) << entry.name;
    }
}

TEST(Catalog, HarmonicMinAgreesWithItsTriple) {
    const auto hm = catalog_lookup("harmonic_min");
    const auto gen = from_triple({unit::identity(), unit::identity(), unit::harmonic()});
    for (double x : default_grid()) {
        for (double y : default_grid()) {
            EXPECT_NEAR(hm(x, y), gen(x, y), 1e-12) << x << ", " << y;
        }
    }
}

TEST(Catalog, Errors) {
    EXPECT_THROW(catalog_lookup("nope"), CatalogError);
    EXPECT_THROW(catalog_lookup("flat"), CatalogError);
    EXPECT_THROW(catalog_lookup("flat", {{"alpha", "0.2"}}), CatalogError);
    EXPECT_THROW(catalog_lookup("flat", {{"alpha", "1.5"}, {"beta", "0"}}), std::invalid_argument);
    EXPECT_THROW(catalog_lookup("min", {{"alpha", "0.2"}}), CatalogError);
    EXPECT_THROW(catalog_lookup("boundary_only", {{"g", "x^2"}}), CatalogError);
}

TEST(Catalog, ListsTheSevenEntries) {
    std::vector<std::string> names;
    for (const auto& e : catalog_entries()) {
        names.push_back(e.name);
    }
    EXPECT_EQ(names, (std::vector<std::string>{"min", "max", "product", "drastic", "harmonic_min",
                                               "flat", "boundary_only"}));
}

TEST(UnitFunction, RejectsOutOfRange) {
    EXPECT_THROW(unit::parse("2*x"), InvalidFunction);
    EXPECT_THROW(unit::parse("x-0.5"), InvalidFunction);
    EXPECT_NO_THROW(unit::parse("0.5*x"));
}

TEST(UnitFunction, DeclaredFlagsAreChecked) {
    EXPECT_THROW(unit::parse("1-x", UnitFlags::monotone()), InvalidFunction);
    EXPECT_THROW(unit::parse("0.9*x", UnitFlags::bijection()), InvalidFunction);
    EXPECT_THROW(unit::parse("0.5", UnitFlags::bijection()), InvalidFunction);
    EXPECT_NO_THROW(unit::parse("x^3", UnitFlags::bijection()));
}

TEST(UnitFunction, PowerExpressionGetsClosedFormInverse) {
    const auto f = unit::parse("x^2", UnitFlags::bijection());
    EXPECT_TRUE(f.has_closed_form_inverse());
    EXPECT_EQ(f.inverse(0.25), 0.5);
    EXPECT_FALSE(unit::parse("x*x", UnitFlags::bijection()).has_closed_form_inverse());
}

TEST(UnitFunction, BlendKeepsEndpoints) {
    for (double w : {0.1, 0.37, 0.9}) {
        const auto b = unit::blend_with_identity(w, unit::harmonic());
        EXPECT_EQ(b(0.0), 0.0);
        EXPECT_EQ(b(1.0), 1.0);
        EXPECT_NEAR(b(0.5), w * (2.0 / 3.0) + (1 - w) * 0.5, 1e-15);
    }
}

TEST(Combine, Expressions) {
    const auto mean = combine(Combiner::Mean, unit::identity(), unit::identity());
    EXPECT_EQ(mean(0.2, 0.6), 0.4);
    const auto bsum = combine(Combiner::BoundedSum, unit::identity(), unit::identity());
    EXPECT_EQ(bsum(0.7, 0.6), 1.0);
    EXPECT_EQ(bsum(0.25, 0.5), 0.75);
    EXPECT_FALSE(parse_combiner("median").has_value());
    EXPECT_EQ(parse_combiner("bounded_sum"), Combiner::BoundedSum);
}

TEST(Combine, RejectsNonAggregation) {
    const auto decreasing = unit::parse("1-x");
    EXPECT_THROW(combine(Combiner::Min, decreasing, unit::identity()), InvalidAggregation);
}

TEST(Tabulated, ExactAtNodesAndInterpolatesBetween) {
    const std::size_t n = 4;
    const Grid grid(n);
    std::vector<double> values;
    for (double x : grid) {
        for (double y : grid) {
            values.push_back(x * y);
        }
    }
    const auto t = tabulated("xy", n, values);
    for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = 0; j <= n; ++j) {
            EXPECT_EQ(t(grid[i], grid[j]), grid[i] * grid[j]);
        }
    }
    // Bilinear interpolation reproduces xy exactly inside each cell.
    EXPECT_NEAR(t(0.1, 0.3), 0.03, 1e-15);
    EXPECT_EQ(t.provenance(), Provenance::Tabulated);
}

TEST(Tabulated, RejectsWrongSizeAndNonMonotone) {
    EXPECT_THROW(tabulated("bad", 2, {0.0, 0.0}), std::invalid_argument);
    // 2x2 table decreasing in y along x = 0.
    EXPECT_THROW(tabulated("bad", 1, {0.0, 0.0, 1.0, 0.5}), InvalidAggregation);
}

TEST(AggregationFunction, ValidatedThrowsWithWitness) {
    try {
        (void)AggregationFunction::validated("half", Provenance::Expression,
                                             [](double x, double y) { return 0.5 * (x * y); });
        FAIL();
    } catch (const InvalidAggregation& e) {
        ASSERT_TRUE(e.report().witness.has_value());
        EXPECT_EQ(e.report().witness->condition, "A(1,1)=1");
    }
}

}  // namespace
}  // namespace qhagg
