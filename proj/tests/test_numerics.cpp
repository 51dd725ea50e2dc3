#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "qhagg/numerics.hpp"
#include "qhagg/unit_function.hpp"
#include "support/oracles.hpp"

namespace qhagg {
namespace {

TEST(ExtNonneg, RejectsNegativeAndNan) {
    EXPECT_THROW(ExtNonneg(-0.5), DomainError);
    EXPECT_THROW(ExtNonneg(std::nan("")), DomainError);
    EXPECT_NO_THROW(ExtNonneg(kInfinity));
}

TEST(ExtNonneg, InfinityOrdersAboveFinite) {
    EXPECT_GT(ExtNonneg::infinity(), ExtNonneg(1e300));
    EXPECT_LT(ExtNonneg::zero(), ExtNonneg(1e-300));
}

TEST(ExtMul, ZeroAbsorbsInfinity) {
    EXPECT_EQ(ext_mul(ExtNonneg(0.0), ExtNonneg::infinity()).value(), 0.0);
    EXPECT_EQ(ext_mul(ExtNonneg::infinity(), ExtNonneg(0.0)).value(), 0.0);
}

TEST(ExtMul, FiniteAndInfiniteProducts) {
    EXPECT_EQ(ext_mul(ExtNonneg(2.0), ExtNonneg(3.0)).value(), 6.0);
    EXPECT_TRUE(ext_mul(ExtNonneg::infinity(), ExtNonneg(0.5)).is_infinite());
}

TEST(ExtMul, CommutativeAndAssociativeOnSample) {
    const std::array<ExtNonneg, 5> sample{ExtNonneg(0.0), ExtNonneg(0.25), ExtNonneg(1.0),
                                          ExtNonneg(4.0), ExtNonneg::infinity()};
    for (auto a : sample) {
        for (auto b : sample) {
            EXPECT_EQ(ext_mul(a, b), ext_mul(b, a));
            for (auto c : sample) {
                EXPECT_EQ(ext_mul(ext_mul(a, b), c), ext_mul(a, ext_mul(b, c)));
            }
        }
    }
}

TEST(ExtDiv, Conventions) {
    EXPECT_EQ(ext_div(ExtNonneg(1.0), ExtNonneg::infinity()).value(), 0.0);
    EXPECT_EQ(ext_div(ExtNonneg::infinity(), ExtNonneg::infinity()).value(), 1.0);
    EXPECT_EQ(ext_div(ExtNonneg(3.0), ExtNonneg(4.0)).value(), 0.75);
    EXPECT_THROW(ext_div(ExtNonneg(1.0), ExtNonneg(0.0)), DomainError);
}

TEST(MakeGrid, SmallResolutions) {
    auto as_vec = [](const Grid& g) { return std::vector<double>(g.begin(), g.end()); };
    EXPECT_EQ(as_vec(make_grid(1)), (std::vector<double>{0.0, 1.0}));
    EXPECT_EQ(as_vec(make_grid(2)), (std::vector<double>{0.0, 0.5, 1.0}));
    EXPECT_EQ(as_vec(make_grid(4)), (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
}

TEST(MakeGrid, RejectsZero) { EXPECT_THROW(make_grid(0), std::invalid_argument); }

TEST(MakeGrid, ExactEndpointsAndStrictOrder) {
    for (std::size_t n : {3u, 7u, 100u, 333u}) {
        const Grid g(n);
        ASSERT_EQ(g.size(), n + 1);
        EXPECT_EQ(g[0], 0.0);
        EXPECT_EQ(g[n], 1.0);
        for (std::size_t i = 1; i <= n; ++i) {
            EXPECT_LT(g[i - 1], g[i]);
        }
    }
}

TEST(InvertMonotone, Examples) {
    EXPECT_EQ(invert_monotone(unit::identity(), 0.3), 0.3);
    EXPECT_DOUBLE_EQ(invert_monotone(unit::power(2.0), 0.25), 0.5);
    // Bisection path: strip the closed-form inverse.
    const auto harmonic = unit::harmonic();
    const UnitFunction bare("2x/(1+x)", [](double x) { return 2.0 * x / (1.0 + x); },
                            UnitFlags::bijection());
    const double expected = testing::oracle_bisect(bare, 2.0 / 3.0);
    EXPECT_NEAR(expected, 0.5, 1e-12);
    EXPECT_NEAR(invert_monotone(bare, 2.0 / 3.0), expected, 1e-12);
    EXPECT_NEAR(invert_monotone(harmonic, 2.0 / 3.0), expected, 1e-12);
}

TEST(InvertMonotone, RequiresDeclaredBijection) {
    const UnitFunction undeclared("x", [](double x) { return x; });
    EXPECT_THROW(invert_monotone(undeclared, 0.5), ContractViolation);
}

TEST(InvertMonotone, OutOfRangeTargetIsDomainError) {
    EXPECT_THROW(invert_monotone(unit::identity(), 1.5), DomainError);
    EXPECT_THROW(invert_monotone(unit::identity(), -0.5), DomainError);
}

TEST(InvertMonotone, ResidualWithinTolOnGrid) {
    const std::vector<UnitFunction> fs{
        unit::identity(),
        unit::power(2.0),
        unit::power(0.5),
        unit::harmonic(),
        UnitFunction("sq-bisect", [](double x) { return x * x; }, UnitFlags::bijection()),
        UnitFunction("cubic-mix", [](double x) { return 0.5 * x + 0.5 * x * x * x; },
                     UnitFlags::bijection()),
    };
    const Grid grid(kDefaultGridResolution);
    for (const auto& f : fs) {
        for (double y : grid) {
            const double x = invert_monotone(f, y, kDefaultInvertTol);
            EXPECT_LE(std::abs(f(x) - y), kDefaultInvertTol) << f.name() << " y=" << y;
        }
    }
}

TEST(InvertMonotone, IncreasingInTarget) {
    const UnitFunction f("cubic-mix", [](double x) { return 0.5 * x + 0.5 * x * x * x; },
                         UnitFlags::bijection());
    const Grid grid(kDefaultGridResolution);
    double prev = -1.0;
    for (double y : grid) {
        const double x = invert_monotone(f, y);
        EXPECT_LT(prev, x);
        prev = x;
    }
}

TEST(BisectIncreasing, MatchesOracle) {
    auto f = [](double x) { return 0.5 * (x + x * x * x); };
    for (double y : {0.0, 0.1, 0.5, 0.9, 1.0}) {
        EXPECT_NEAR(bisect_increasing(f, y), testing::oracle_bisect(f, y), 1e-12);
    }
}

TEST(FitPowerExponent, RecoversExponent) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (int i = 0; i <= 10; ++i) {
        xs.push_back(i / 10.0);
        ys.push_back(std::pow(i / 10.0, 2.5));
    }
    auto fit = fit_power_exponent(xs, ys);
    ASSERT_TRUE(fit.has_value());
    EXPECT_NEAR(fit->exponent, 2.5, 1e-12);
    EXPECT_LT(fit->max_abs_residual, 1e-12);
    EXPECT_EQ(fit->points_used, 9u);
}

TEST(FitPowerExponent, NoUsablePoints) {
    std::vector<double> xs{0.0, 0.5, 1.0};
    std::vector<double> ys{0.0, 0.0, 1.0};
    EXPECT_FALSE(fit_power_exponent(xs, ys).has_value());
}

TEST(FormatShortest, RoundTrips) {
    EXPECT_EQ(format_shortest(0.4), "0.4");
    EXPECT_EQ(format_shortest(1.0), "1");
    EXPECT_EQ(format_shortest(0.0), "0");
    const double v = 2.0 / 3.0;
    EXPECT_EQ(std::stod(format_shortest(v)), v);
}

}  // namespace
}  // namespace qhagg
