#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "nsfd/denominator.hpp"
#include "nsfd/errors.hpp"
#include "oracle/oracle_values.hpp"
#include "test_support.hpp"

using namespace nsfd;
namespace den = nsfd::denominator;

namespace {

ScalarProblem logistic() {
    return test::make("logistic", [](double y) { return 2 * y - y * y; }, [](double y) { return 2 - 2 * y; },
                      {0, 10});
}

ScalarProblem cubic() {
    return test::make("cubic", [](double y) { return y - y * y * y; }, [](double y) { return 1 - 3 * y * y; },
                      {0, 10});
}

const Representation kRep1 = test::rep([](double y) { return 2 * y; }, [](double y) { return -y; });

}  // namespace

TEST(Lambda, LogisticFirstRepresentation) {
    const auto lam = den::lambda_from_scheme(logistic(), kRep1, 1.25);
    for (double y : {0.0, 1.0, 2.0, 7.5}) {
        EXPECT_NEAR(lam(y), -2.0 - 0.5 * y, 1e-14);
    }
    const auto lam1 = den::lambda_from_scheme(logistic(), kRep1, 1.0);
    for (double y : {0.0, 1.0, 2.0, 7.5}) {
        EXPECT_NEAR(lam1(y), -2.0, 1e-14);
    }
}

TEST(Lambda, CubicIsConstant) {
    const auto lam = den::lambda_from_scheme(cubic(), test::rep([](double y) { return y; }, [](double y) { return -y * y; }),
                                             1.5);
    for (double y : {0.0, 0.3, 1.0, 4.0}) {
        EXPECT_NEAR(lam(y), -1.0, 1e-12);
    }
}

TEST(Phim, FrozenValues) {
    const auto ulps = [](double v) { return 4.0 * std::numeric_limits<double>::epsilon() * std::abs(v); };
    EXPECT_DOUBLE_EQ(den::phim(0.0), 1.0);
    EXPECT_NEAR(den::phim(1.0), oracle::phim_1, ulps(oracle::phim_1));
    EXPECT_NEAR(den::phim(-2.0), oracle::phim_m2, ulps(oracle::phim_m2));
    EXPECT_NEAR(den::phim(1e-6), oracle::phim_1e_6, ulps(oracle::phim_1e_6));
    EXPECT_NEAR(den::phim(1e-3), oracle::phim_1e_3, ulps(oracle::phim_1e_3));
    EXPECT_NEAR(den::phim(9e-6), oracle::phim_9e_6, ulps(oracle::phim_9e_6));
    EXPECT_NEAR(den::phim(-9e-6), oracle::phim_m9e_6, ulps(oracle::phim_m9e_6));
    EXPECT_NEAR(den::phim(50.0), oracle::phim_50, ulps(oracle::phim_50));
    EXPECT_NEAR(den::phim(-50.0), oracle::phim_m50, ulps(oracle::phim_m50));
}

TEST(Phim, AgreesWithMultiprecisionAcrossMagnitudes) {
    using big = boost::multiprecision::cpp_bin_float_50;
    for (int sign : {-1, 1}) {
        for (double e = -12.0; e <= 2.5; e += 0.05) {
            const double x = sign * std::pow(10.0, e);
            const big bx(x);
            const big ref = (1 - boost::multiprecision::exp(-bx)) / bx;
            const double r = static_cast<double>(ref);
            EXPECT_LE(std::abs(den::phim(x) - r), 4e-16 * std::abs(r)) << "x = " << x;
        }
    }
}

TEST(Phim, PositiveEverywhere) {
    for (double x : {-700.0, -50.0, -1.0, -1e-8, 0.0, 1e-8, 1.0, 50.0, 1e6}) {
        EXPECT_GT(den::phim(x), 0.0) << x;
    }
}

TEST(Phi, RejectsNonPositiveStep) {
    const auto spec = den::constant_rate(1.0, "rate 1");
    EXPECT_THROW(den::phi(spec, 0.0, 1.0), NonPositiveStep);
    EXPECT_THROW(den::phi(spec, -0.1, 1.0), NonPositiveStep);
}

TEST(Phi, FrozenValues) {
    EXPECT_DOUBLE_EQ(den::phi(den::eq17([](double) { return 0.0; }, "zero"), 0.3, 1.0), 0.3);
    EXPECT_NEAR(den::phi(den::eq17([](double) { return -2.0; }, "exact"), 0.7, 0.0), oracle::eq17_lambda_m2_h07, 1e-15);
    EXPECT_NEAR(den::phi(den::constant_rate(std::numbers::pi, "pi"), 0.1, 0.0), oracle::const_rate_pi_h01, 1e-16);
    EXPECT_DOUBLE_EQ(den::phi(den::constant_rate(0.0, "zero"), 0.25, 0.0), 0.25);
    EXPECT_DOUBLE_EQ(den::phi(den::custom([](double h, double y) { return h / (1 + y); }, "custom"), 0.5, 1.0), 0.25);
}

TEST(Phi, ConsistentAsStepShrinks) {
    const auto spec = den::eq17([](double y) { return -2.0 - 0.5 * y; }, "snsfd1");
    for (double y : {0.0, 2.0, 10.0}) {
        for (double h : {1e-4, 1e-6, 1e-8}) {
            EXPECT_NEAR(den::phi(spec, h, y) / h, 1.0, 10 * h * (2 + 0.5 * y));
        }
    }
}

TEST(Curvature, MatchesMinusLambda) {
    for (double lam : {-7.0, -2.0, 0.0, 0.5, 3.0}) {
        const auto spec = den::eq17([lam](double) { return lam; }, "const");
        EXPECT_NEAR(den::curvature_at_zero(spec, 0.0), -lam, 1e-4 * std::max(1.0, std::abs(lam)));
    }
    EXPECT_NEAR(den::curvature_at_zero(den::constant_rate(1.0, "wood"), 0.0), -1.0, 1e-6);
}

TEST(HConditions, FirstLogisticSchemePasses) {
    const auto p = logistic();
    const auto cfg = SchemeConfig::from_beta(1.25, den::eq17_for(p, kRep1, 1.25, "eq17"), "snsfd1");
    const auto r = den::check_H_conditions(p, kRep1, cfg);
    EXPECT_TRUE(r.h1.pass) << r.h1.witness;
    EXPECT_TRUE(r.h2.pass) << r.h2.witness;
    EXPECT_TRUE(r.h2.vacuous);
    EXPECT_TRUE(r.h3.pass) << r.h3.witness;
    EXPECT_TRUE(r.h4.pass);
    EXPECT_TRUE(r.all_pass());
}

TEST(HConditions, ConstantRateSignSwitchingFailsH3) {
    const auto p = logistic();
    const auto cfg = SchemeConfig::unchecked(1.0, 0.0, den::constant_rate(1.0, "1 - exp(-h)"), "wood");
    const auto r = den::check_H_conditions(p, kRep1, cfg);
    EXPECT_TRUE(r.h1.pass);
    EXPECT_FALSE(r.h3.pass);
}

TEST(HConditions, InvalidWeightsFailH4) {
    const auto p = logistic();
    const auto cfg = SchemeConfig::unchecked(0.5, 0.5, den::eq17_for(p, kRep1, 0.5, "eq17"), "half");
    EXPECT_FALSE(den::check_H_conditions(p, kRep1, cfg).h4.pass);
}

TEST(HConditions, PublishedCubicDenominatorFailsH3) {
    const auto p = cubic();
    const auto rep = test::rep([](double y) { return y; }, [](double y) { return -y * y; });
    const auto printed = SchemeConfig::from_beta(1.5, den::constant_rate(1.0, "1 - exp(-h)"), "printed");
    EXPECT_FALSE(den::check_H_conditions(p, rep, printed).h3.pass);
    const auto derived = SchemeConfig::from_beta(1.5, den::eq17_for(p, rep, 1.5, "eq17"), "derived");
    EXPECT_TRUE(den::check_H_conditions(p, rep, derived).all_pass());
}

TEST(HConditions, H2BindingBoundDetected) {
    // y' = 1 - y with f+ = 1, f- = -1 and beta = 0: the stable point y* = 1
    // requires phi < 2, which phi = h violates for h >= 2.
    const auto p = test::make("decay", [](double y) { return 1.0 - y; }, [](double) { return -1.0; }, {0, 10});
    const auto rep = test::rep([](double) { return 1.0; }, [](double) { return -1.0; });
    const auto cfg = SchemeConfig::unchecked(1.0, 0.0, den::custom([](double h, double) { return h; }, "h"), "plain");
    const auto r = den::check_H_conditions(p, rep, cfg);
    EXPECT_FALSE(r.h2.pass);
    EXPECT_FALSE(r.h2.vacuous);
}
