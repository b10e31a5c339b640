#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "nsfd/denominator.hpp"
#include "nsfd/errors.hpp"
#include "nsfd/registry.hpp"
#include "nsfd/scalar_integrator.hpp"
#include "oracle/oracle_values.hpp"
#include "test_support.hpp"

using namespace nsfd;
namespace in = nsfd::integrator;

namespace {

const ScalarProblem& logistic() { return registry::problem("logistic"); }

const Representation kRep1 = test::rep([](double y) { return 2 * y; }, [](double y) { return -y; });

SchemeConfig snsfd1_config() {
    return SchemeConfig::from_beta(1.25, denominator::eq17_for(logistic(), kRep1, 1.25, "eq17"), "snsfd1");
}

}  // namespace

TEST(NsfdStep, FrozenOneStepValue) {
    EXPECT_NEAR(in::nsfd_step(kRep1, snsfd1_config(), 0.5, 0.1), oracle::snsfd1_step, 1e-15);
    // Within O(h^3) of the exact flow.
    EXPECT_NEAR(in::nsfd_step(kRep1, snsfd1_config(), 0.5, 0.1), oracle::exact_log_01, 1e-4);
}

TEST(NsfdStep, EquilibriumIsFixedForEveryStep) {
    for (double h : {1e-3, 0.1, 1.25, 10.0, 100.0, 1e300}) {
        EXPECT_EQ(in::nsfd_step(kRep1, snsfd1_config(), 2.0, h), 2.0);
        EXPECT_EQ(in::nsfd_step(kRep1, snsfd1_config(), 0.0, h), 0.0);
    }
}

TEST(NsfdStep, NegativeInputRejected) {
    EXPECT_THROW(in::nsfd_step(kRep1, snsfd1_config(), -1e-300, 0.1), NegativeState);
    EXPECT_THROW(in::nsfd_step(kRep1, snsfd1_config(), std::numeric_limits<double>::quiet_NaN(), 0.1), NegativeState);
}

TEST(NsfdStep, ZeroMinusPartReducesToNonstandardEuler) {
    const auto rep = test::rep([](double y) { return 1 + y; }, [](double) { return 0.0; });
    const auto cfg = SchemeConfig::from_beta(1.0, denominator::constant_rate(0.5, "r"), "euler-like");
    const double phi = denominator::phi(cfg.denominator(), 0.2, 0.0);
    EXPECT_NEAR(in::nsfd_step(rep, cfg, 3.0, 0.2), 3.0 + phi * 4.0, 1e-14);
}

TEST(NsfdStep, InfiniteDenominatorHasFiniteLimit) {
    // beta = 1 logistic: y+ -> f+/(-f-) = 2 as phi -> inf.
    const auto cfg = SchemeConfig::from_beta(1.0, denominator::eq17([](double) { return -2.0; }, "exact"), "exact");
    EXPECT_NEAR(in::nsfd_step(kRep1, cfg, 0.5, 1e6), 2.0, 1e-12);
    EXPECT_DOUBLE_EQ(in::rational_update(0.5, INFINITY, 2.0, 1.0), 2.0);
    EXPECT_EQ(in::rational_update(0.5, INFINITY, 2.0, 0.0), INFINITY);
    EXPECT_DOUBLE_EQ(in::rational_update(0.5, INFINITY, 0.0, 0.0), 0.5);
}

TEST(NsfdStep, RationalUpdateBranchesAgree) {
    for (double phi : {0.5, 1.0, 1.0 + 1e-12, 3.0, 1e8}) {
        const double direct = (0.7 + phi * 1.3) / (1.0 + phi * 0.4);
        EXPECT_NEAR(in::rational_update(0.7, phi, 1.3, 0.4), direct, 1e-14 * direct);
    }
}

TEST(MakeNsfdMap, InvalidWeightsRejected) {
    const auto bad = SchemeConfig::unchecked(1.1, -0.1, denominator::constant_rate(1.0, "r"), "bad");
    EXPECT_THROW(in::make_nsfd_map(kRep1, bad), InvalidWeights);
    const auto m = in::make_nsfd_map(kRep1, snsfd1_config());
    EXPECT_TRUE(m.requires_representation);
    EXPECT_EQ(m.order_claimed, in::ClaimedOrder::second);
}

TEST(Baselines, EulerAndHeun) {
    EXPECT_DOUBLE_EQ(in::euler_step(logistic(), 0.5, 0.1), oracle::euler_log);
    EXPECT_DOUBLE_EQ(in::euler_step(logistic(), 0.5, 1.25), 1.4375);
    EXPECT_DOUBLE_EQ(in::euler_step(logistic(), 2.0, 7.0), 2.0);
    EXPECT_NEAR(in::rk2_step(logistic(), 0.5, 0.1), oracle::heun_log, 1e-16);
    EXPECT_DOUBLE_EQ(in::rk2_step(logistic(), 2.0, 1.25), 2.0);
}

TEST(Baselines, EulerOscillatesAtLargeStep) {
    double y = 0.5;
    int above = 0;
    int below = 0;
    for (int k = 0; k < 40; ++k) {
        y = in::euler_step(logistic(), y, 1.25);
        if (k >= 2) {
            (y > 2.0 ? above : below) += 1;
        }
    }
    EXPECT_GT(above, 5);
    EXPECT_GT(below, 5);
}

TEST(Baselines, HeunConvergesToSpuriousPoint) {
    double y = 0.5;
    for (int k = 0; k < 200; ++k) {
        y = in::rk2_step(logistic(), y, 1.25);
    }
    EXPECT_GT(std::abs(y - 2.0), 0.1);
    const bool at_spurious = std::abs(y - oracle::rk2_spurious_0) < 1e-9 || std::abs(y - oracle::rk2_spurious_1) < 1e-9;
    EXPECT_TRUE(at_spurious || std::abs(in::rk2_step(logistic(), in::rk2_step(logistic(), y, 1.25), 1.25) - y) < 1e-9)
        << "limit " << y;
}

TEST(Baselines, SignSwitchingScheme) {
    EXPECT_NEAR(in::wood_kojouharov_step(0.5, 0.1), oracle::wood_log_05, 1e-15);
    EXPECT_NEAR(in::wood_kojouharov_step(3.0, 0.1), oracle::wood_log_3, 1e-15);
    EXPECT_DOUBLE_EQ(in::wood_kojouharov_step(2.0, 0.1), 2.0);
}

TEST(Baselines, ConstantRateSchemes) {
    EXPECT_NEAR(in::mickens_cubic_step(0.5, 0.1), oracle::mickens_cubic_step, 1e-15);
    EXPECT_NEAR(in::mickens_monod_step(0.5, 0.1, 2.0), oracle::mickens_monod_step, 1e-15);
    EXPECT_NEAR(in::mickens_sine_step(0.5, 0.1), oracle::mickens_sine_step, 1e-15);
    for (double h : {0.1, 1.0, 10.0, 100.0}) {
        EXPECT_NEAR(in::mickens_cubic_step(1.0, h), 1.0, 1e-15);
        EXPECT_NEAR(in::mickens_sine_step(1.0, h), 1.0, 1e-15);
        EXPECT_NEAR(in::mickens_monod_step(1.0 / 3.0, h, 2.0), 1.0 / 3.0, 1e-15);
    }
    EXPECT_THROW(in::mickens_monod_step(0.5, 0.1, 1.0), ParameterOutOfRange);
}

TEST(PowerLaw, FrozenStepAndFixedPoint) {
    const in::PowerLawParams p{2.0, 1.0, 4};
    EXPECT_NEAR(in::powerlaw_nsfd_step(p, 0.5, 0.1), oracle::powerlaw_step, 1e-15);
    const double y_star = std::cbrt(2.0);
    for (double h : {0.1, 1.0, 10.0}) {
        EXPECT_NEAR(in::powerlaw_nsfd_step(p, y_star, h), y_star, 1e-14);
    }
    EXPECT_THROW(in::powerlaw_nsfd_step({2.0, 1.0, 1}, 0.5, 0.1), ParameterOutOfRange);
    EXPECT_THROW(in::powerlaw_nsfd_step({-2.0, 1.0, 2}, 0.5, 0.1), ParameterOutOfRange);
}

TEST(PowerLaw, QuadraticCaseIsTheExactLogisticScheme) {
    const in::PowerLawParams p{2.0, 1.0, 2};
    const auto cfg = SchemeConfig::from_beta(1.0, denominator::eq17([](double) { return -2.0; }, "exact"), "exact");
    for (double y : {0.0, 0.5, 3.0}) {
        for (double h : {0.01, 0.5, 3.0}) {
            EXPECT_NEAR(in::powerlaw_nsfd_step(p, y, h), in::nsfd_step(kRep1, cfg, y, h), 1e-13 * (1 + y));
        }
    }
}

TEST(Integrate, GridAndFinalValue) {
    const auto traj = in::integrate(registry::scheme("logistic", "snsfd1").step, 0.5, 0.1, 1.0, "logistic");
    ASSERT_EQ(traj.size(), 11u);
    EXPECT_DOUBLE_EQ(traj.final_time(), 1.0);
    EXPECT_NEAR(traj.final_state(), oracle::exact_log_1, oracle::table2_snsfd1_e1 * 1.01);
    EXPECT_EQ(traj.positivity_violations, 0u);
}

TEST(Integrate, ZeroStaysZero) {
    const auto traj = in::integrate(registry::scheme("logistic", "snsfd1").step, 0.0, 0.5, 10.0);
    for (double y : traj.states) {
        EXPECT_EQ(y, 0.0);
    }
}

TEST(Integrate, EulerNegativeCountedNotClamped) {
    const auto traj = in::integrate(registry::scheme("logistic", "euler").step, 4.0, 1.0, 1.0);
    EXPECT_DOUBLE_EQ(traj.final_state(), -4.0);
    EXPECT_EQ(traj.positivity_violations, 1u);
}

TEST(StepCount, Validation) {
    EXPECT_EQ(in::step_count(0.1, 1.0), 10);
    EXPECT_EQ(in::step_count(1e-5, 1.0), 100000);
    EXPECT_THROW(in::step_count(0.0, 1.0), NonPositiveStep);
    EXPECT_THROW(in::step_count(1e-12, 1.0), StepCountOverflow);
    testing::internal::CaptureStderr();
    EXPECT_EQ(in::step_count(0.3, 1.0), 3);
    EXPECT_NE(testing::internal::GetCapturedStderr().find("not a multiple"), std::string::npos);
}

TEST(ReferenceSolution, AgreesWithClosedForms) {
    EXPECT_NEAR(in::reference_solution(logistic(), 0.5, 0.01, 1.0).final_state(), oracle::exact_log_1, 1e-12);
    EXPECT_NEAR(in::reference_solution(registry::problem("cubic"), 0.5, 0.01, 1.0).final_state(),
                oracle::cubic_exact_1, 1e-12);
    EXPECT_NEAR(in::reference_solution(registry::problem("sine"), 0.5, 0.01, 1.0).final_state(), oracle::sine_exact_1,
                1e-12);
    EXPECT_NEAR(in::reference_solution(registry::problem("monod"), 0.5, 0.01, 1.0).final_state(),
                oracle::monod_ode_1, 1e-12);
}

TEST(ReferenceSolution, SelfCheckCatchesWrongClosedForm) {
    auto p = logistic();
    p.exact_solution = [](double t, double y0) { return y0 + t; };
    EXPECT_THROW(in::reference_solution(p, 0.5, 0.1, 1.0), OracleSelfCheckFailed);
}

TEST(ReferenceSolution, EquilibriumStartIsConstant) {
    const auto traj = in::reference_solution(logistic(), 2.0, 0.1, 1.0);
    for (double y : traj.states) {
        EXPECT_DOUBLE_EQ(y, 2.0);
    }
}
