#include <gtest/gtest.h>

#include <cmath>

#include "qhagg/catalog.hpp"
#include "qhagg/construct.hpp"
#include "qhagg/verify.hpp"
#include "support/oracles.hpp"

namespace qhagg {
namespace {

namespace tc = triple_condition;

const Grid& default_grid() {
    static const Grid grid(kDefaultGridResolution);
    return grid;
}

GeneratorTriple harmonic_triple() { return {unit::identity(), unit::identity(), unit::harmonic()}; }
GeneratorTriple square_h_triple() { return {unit::identity(), unit::identity(), unit::power(2.0)}; }

TEST(ValidateTriple, HarmonicExamplePasses) {
    const auto report = validate_triple(harmonic_triple(), default_grid());
    EXPECT_TRUE(report.passed());
    EXPECT_EQ(report.conditions.size(), 7u);
}

TEST(ValidateTriple, SquareHFailsRatio) {
    const auto report = validate_triple(square_h_triple(), make_grid(2));
    EXPECT_FALSE(report.passed());
    const auto* ratio = report.find(tc::kHRatio);
    ASSERT_NE(ratio, nullptr);
    EXPECT_FALSE(ratio->passed);
    ASSERT_TRUE(ratio->witness.has_value());
    EXPECT_EQ(*ratio->witness, std::pair(0.5, 1.0));
    EXPECT_TRUE(report.find(tc::kGRatio)->passed);
}

TEST(ValidateTriple, SquareHWitnessIsFirstPairOnFineGrid) {
    const auto report = validate_triple(square_h_triple(), default_grid());
    const auto* ratio = report.find(tc::kHRatio);
    ASSERT_TRUE(ratio->witness.has_value());
    EXPECT_EQ(*ratio->witness, std::pair(0.01, 0.02));
}

TEST(ValidateTriple, GNotReachingOne) {
    const GeneratorTriple t{unit::identity(), unit::parse("0.9*x"), unit::identity()};
    const auto report = validate_triple(t, default_grid());
    EXPECT_FALSE(report.passed());
    EXPECT_FALSE(report.find(tc::kGAtOne)->passed);
    EXPECT_TRUE(report.find(tc::kHAtOne)->passed);
}

TEST(ValidateTriple, UndeclaredNonBijectiveF) {
    const GeneratorTriple t{unit::parse("0.5*x"), unit::identity(), unit::identity()};
    const auto report = validate_triple(t, default_grid());
    EXPECT_FALSE(report.find(tc::kFBijection)->passed);
}

TEST(ValidateTriple, DecreasingSection) {
    const GeneratorTriple t{unit::identity(), unit::identity(),
                            UnitFunction("bump", [](double x) { return x == 0.5 ? 0.9 : x; })};
    EXPECT_FALSE(validate_triple(t, default_grid()).find(tc::kHIncreasing)->passed);
}

TEST(FromTriple, HarmonicExample) {
    const auto a = from_triple(harmonic_triple());
    EXPECT_NEAR(a(0.3, 0.6), 0.4, 1e-15);
    EXPECT_EQ(a(0.9, 0.4), 0.4);
    EXPECT_EQ(a(1.0, 1.0), 1.0);
    EXPECT_EQ(a(0.0, 0.0), 0.0);
    EXPECT_EQ(a.provenance(), Provenance::TripleGenerated);
}

TEST(FromTriple, RejectsInvalidTripleWithReport) {
    try {
        (void)from_triple(square_h_triple());
        FAIL();
    } catch (const InvalidTriple& e) {
        ASSERT_NE(e.report().first_failure(), nullptr);
        EXPECT_EQ(e.report().first_failure()->name, tc::kHRatio);
    }
}

TEST(FromTriple, TieUsesLowerBranch) {
    // f = x^2, g = x, h = sqrt(x): on the diagonal both branches give f(x).
    const GeneratorTriple t{unit::power(2.0), unit::identity(), unit::power(0.5)};
    const auto a = from_triple(t);
    for (double x : default_grid()) {
        EXPECT_NEAR(a(x, x), x * x, 1e-15);
    }
}

TEST(FromTriple, MatchesOracleOnRandomTriples) {
    const auto shapes = testing::random_valid_triples(20, 7);
    for (const auto& s : shapes) {
        const auto a = from_triple(s.build());
        for (double x : default_grid()) {
            for (double y : default_grid()) {
                ASSERT_NEAR(a(x, y), s.eval(x, y), 1e-12) << s.describe() << " at " << x << "," << y;
            }
        }
    }
}

TEST(ClassFlat, Examples) {
    const auto a = class_flat(0.2, 0.7);
    EXPECT_EQ(a(0.3, 0.9), 1.0);
    EXPECT_EQ(a(0.5, 0.0), 0.7);
    EXPECT_EQ(a(0.0, 0.5), 0.2);
    EXPECT_EQ(class_flat(0.0, 0.0)(0.0, 0.0), 0.0);
    EXPECT_THROW(class_flat(-0.1, 0.5), std::invalid_argument);
    EXPECT_THROW(class_flat(0.5, 1.1), std::invalid_argument);
}

TEST(ClassBoundary, IdentitySectionsGiveDrastic) {
    const auto a = class_boundary(unit::identity(), unit::identity());
    for (double x : default_grid()) {
        for (double y : default_grid()) {
            EXPECT_EQ(a(x, y), testing::oracle_drastic(x, y));
        }
    }
    EXPECT_EQ(a(0.99, 0.99), 0.0);
}

TEST(ClassBoundary, Examples) {
    const auto a = class_boundary(unit::power(2.0), unit::identity());
    EXPECT_EQ(a(1.0, 0.5), 0.25);
    EXPECT_EQ(a(0.5, 1.0), 0.5);
    EXPECT_EQ(a(1.0, 1.0), 1.0);
    EXPECT_THROW(class_boundary(unit::parse("0.5*x"), unit::identity()), InvalidFunction);
    EXPECT_THROW(class_boundary(unit::identity(), unit::parse("1-x")), InvalidFunction);
}

TEST(TripleOf, HarmonicMin) {
    const auto t = triple_of(catalog_lookup("harmonic_min"));
    for (double x : default_grid()) {
        EXPECT_EQ(t.f(x), x);
        EXPECT_EQ(t.g(x), x);
        EXPECT_NEAR(t.h(x), 2 * x / (1 + x), 1e-15);
    }
    EXPECT_FALSE(t.f.flags().continuous_bijection);
}

TEST(TripleOf, MinAndProduct) {
    const auto tm = triple_of(catalog_lookup("min"));
    const auto tp = triple_of(catalog_lookup("product"));
    for (double x : default_grid()) {
        EXPECT_EQ(tm.f(x), x);
        EXPECT_EQ(tm.g(x), x);
        EXPECT_EQ(tm.h(x), x);
        EXPECT_EQ(tp.f(x), x * x);
        EXPECT_EQ(tp.g(x), x);
        EXPECT_EQ(tp.h(x), x);
    }
    // Rebuilding the product from its triple: f(y sqrt(x/y)) = xy.
    const auto rebuilt = from_triple(tp);
    for (double x : default_grid()) {
        for (double y : default_grid()) {
            EXPECT_NEAR(rebuilt(x, y), x * y, 1e-12);
        }
    }
}

TEST(TripleOf, NeverThrowsOnNonQuasiHomogeneous) {
    const auto bsum = combine(Combiner::BoundedSum, unit::identity(), unit::identity());
    EXPECT_NO_THROW((void)triple_of(bsum));
}

TEST(TripleProperties, RoundTripAndDiagonalIdentity) {
    for (const auto& s : testing::random_valid_triples(30, 11)) {
        const auto t = s.build();
        const auto back = triple_of(from_triple(t));
        for (double x : default_grid()) {
            ASSERT_NEAR(back.f(x), t.f(x), 1e-9) << s.describe();
            ASSERT_NEAR(back.g(x), t.g(x), 1e-9) << s.describe();
            ASSERT_NEAR(back.h(x), t.h(x), 1e-9) << s.describe();
        }
    }
}

TEST(TripleProperties, Soundness) {
    const Grid grid(50);
    for (const auto& s : testing::random_valid_triples(10, 13)) {
        const auto t = s.build();
        const auto a = from_triple(t);
        EXPECT_TRUE(check_aggregation(a, grid, kClosedFormTol).passed) << s.describe();
        const auto qh =
            check_quasi_homogeneity(a, PhiSpec::inverse_of(t.f), PsiPower{1.0}, grid, kClosedFormTol);
        EXPECT_TRUE(qh.passed) << s.describe() << " residual " << qh.max_residual;
    }
}

TEST(TripleProperties, SoundnessWithBisectionInverse) {
    const Grid grid(25);
    const UnitFunction f("x^2 (no closed form)", [](double x) { return x * x; },
                         UnitFlags::bijection());
    const GeneratorTriple t{f, unit::identity(), unit::power(0.5)};
    const auto a = from_triple(t);
    EXPECT_TRUE(check_aggregation(a, grid, kBisectionTol).passed);
    const auto qh = check_quasi_homogeneity(a, PhiSpec::inverse_of(f), PsiPower{1.0}, grid,
                                            kBisectionTol);
    EXPECT_TRUE(qh.passed) << qh.max_residual;
}

TEST(CanonicalClasses, QuasiHomogeneousUnderSeveralPhi) {
    const Grid grid(20);
    const std::vector<PhiSpec> phis{PhiSpec::scaled(unit::identity()),
                                    PhiSpec::scaled(unit::power(2.0)),
                                    PhiSpec::scaled(unit::harmonic(), 3.0)};
    const auto flat = class_flat(0.3, 0.8);
    const auto boundary = class_boundary(unit::power(2.0), unit::harmonic());
    for (const auto& phi : phis) {
        const auto r2 = check_quasi_homogeneity(flat, phi, PsiStepAtZero{}, grid, 0.0);
        EXPECT_TRUE(r2.passed) << phi.name() << " " << r2.max_residual;
        const auto r3 = check_quasi_homogeneity(boundary, phi, PsiStepAtOne{}, grid, 0.0);
        EXPECT_TRUE(r3.passed) << phi.name() << " " << r3.max_residual;
    }
}

}  // namespace
}  // namespace qhagg
