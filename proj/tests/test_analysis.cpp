#include <gtest/gtest.h>

#include <cmath>

#include "nsfd/analysis.hpp"
#include "nsfd/denominator.hpp"
#include "nsfd/errors.hpp"
#include "nsfd/registry.hpp"
#include "oracle/oracle_values.hpp"

using namespace nsfd;
namespace an = nsfd::analysis;

namespace {

const ScalarProblem& logistic() { return registry::problem("logistic"); }

integrator::StepMap step_of(const std::string& label) { return registry::scheme("logistic", label).step; }

}  // namespace

TEST(ErrorAtFinal, IdenticalTrajectoriesGiveZero) {
    const auto t = integrator::integrate(step_of("snsfd1"), 0.5, 0.1, 1.0);
    EXPECT_EQ(an::error_at_final(t, t), 0.0);
}

TEST(ErrorAtFinal, GridMismatchRejected) {
    const auto a = integrator::integrate(step_of("snsfd1"), 0.5, 0.1, 1.0);
    const auto b = integrator::integrate(step_of("snsfd1"), 0.5, 0.1, 2.0);
    EXPECT_THROW(an::error_at_final(a, b), GridMismatch);
}

TEST(ErrorAtFinal, AgainstClosedForm) {
    const auto t = integrator::integrate(step_of("snsfd1"), 0.5, 0.1, 1.0);
    EXPECT_NEAR(an::error_at_final(t, logistic(), 0.5), oracle::table2_snsfd1_e1, 1e-12);
    const auto e = integrator::integrate(step_of("euler"), 0.5, 0.1, 1.0);
    EXPECT_GT(an::error_at_final(e, logistic(), 0.5), 0.0);
}

TEST(ObservedRate, Definition) {
    EXPECT_NEAR(an::observed_rate(0.1, 1e-2, 0.01, 1e-4), 2.0, 1e-14);
    EXPECT_NEAR(an::observed_rate(0.1, 1e-2, 0.05, 5e-3), 1.0, 1e-14);
}

TEST(ConvergenceRates, FirstLogisticSchemeMatchesOracle) {
    const auto t = an::convergence_rates(logistic(), step_of("snsfd1"), {1e-1, 1e-2, 1e-3, 1e-4}, 1.0, 0.5);
    const double expected[] = {oracle::table2_snsfd1_e1, oracle::table2_snsfd1_e2, oracle::table2_snsfd1_e3,
                               oracle::table2_snsfd1_e4};
    ASSERT_EQ(t.rows.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(t.rows[i].error / expected[i], 1.0, i < 3 ? 1e-6 : 2e-3) << "row " << i;
    }
    EXPECT_FALSE(t.rows[0].rate.has_value());
    EXPECT_NEAR(*t.rows[1].rate, 1.9786, 1e-3);
    EXPECT_NEAR(t.fitted_order(), 2.0, 0.02);
}

TEST(ConvergenceRates, ExactSchemeRowsExcludedFromFit) {
    const auto t = an::convergence_rates(logistic(), step_of("snsfd3"), {0.5, 0.1, 0.01}, 1.0, 0.5);
    EXPECT_TRUE(t.all_exact());
    EXPECT_TRUE(std::isnan(t.fitted_order()));
    for (const auto& r : t.rows) {
        EXPECT_FALSE(r.rate.has_value());
    }
}

TEST(ConvergenceRates, EulerIsFirstOrder) {
    const auto t = an::convergence_rates(logistic(), step_of("euler"), {1e-2, 1e-3, 1e-4}, 1.0, 0.5);
    EXPECT_NEAR(t.fitted_order(), 1.0, 0.02);
}

TEST(ConvergenceRates, OracleUsedWithoutClosedForm) {
    const auto t = an::convergence_rates(registry::problem("sine"), registry::scheme("sine", "nsfd").step,
                                         {1e-1, 1e-2, 1e-3}, 1.0, 0.5);
    EXPECT_GT(t.fitted_order(), 1.9);
}

TEST(ConvergenceRates, StepListValidated) {
    EXPECT_THROW(an::convergence_rates(logistic(), step_of("snsfd1"), {0.1}, 1.0, 0.5), std::invalid_argument);
    EXPECT_THROW(an::convergence_rates(logistic(), step_of("snsfd1"), {0.01, 0.1}, 1.0, 0.5), std::invalid_argument);
}

TEST(Positivity, ExhaustiveGridPasses) {
    std::vector<double> y0s;
    for (int i = 0; i <= 100; ++i) {
        y0s.push_back(0.1 * i);
    }
    const auto r = an::positivity_audit(step_of("snsfd1"), y0s, {0.1, 1.0, 10.0, 100.0}, 1000);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.negative_iterates, 0u);
    EXPECT_EQ(r.runs, y0s.size() * 4);
    EXPECT_EQ(r.min_state, 0.0);
}

TEST(Positivity, EulerControlCaseFails) {
    const auto r = an::positivity_audit(step_of("euler"), {4.0}, {1.0}, 10);
    EXPECT_FALSE(r.pass);
    EXPECT_EQ(r.negative_iterates, 1u);
    EXPECT_DOUBLE_EQ(r.min_state, -4.0);
    EXPECT_DOUBLE_EQ(r.worst_y0, 4.0);
}

TEST(Positivity, RandomAuditIsDeterministic) {
    const auto a = an::random_positivity_audit(step_of("euler"), 200, 0, 10, 100, 50, 7);
    const auto b = an::random_positivity_audit(step_of("euler"), 200, 0, 10, 100, 50, 7);
    EXPECT_EQ(a.negative_iterates, b.negative_iterates);
    EXPECT_EQ(a.min_state, b.min_state);
    EXPECT_FALSE(a.pass);
}

TEST(Positivity, OverflowTalliedSeparatelyFromNaN) {
    const integrator::StepMap grow{"grow", [](double y, double) { return y * 1e300; }, false,
                                   integrator::ClaimedOrder::first};
    const auto up = an::positivity_audit(grow, {2.0}, {1.0}, 10);
    EXPECT_TRUE(up.pass);
    EXPECT_EQ(up.overflow_runs, 1u);
    EXPECT_EQ(up.non_finite_iterates, 0u);

    const integrator::StepMap broken{"nan", [](double, double) { return std::nan(""); }, false,
                                     integrator::ClaimedOrder::first};
    const auto bad = an::positivity_audit(broken, {2.0}, {1.0}, 10);
    EXPECT_FALSE(bad.pass);
    EXPECT_EQ(bad.non_finite_iterates, 1u);
}

TEST(Jacobian, AnalyticValuesAtEquilibria) {
    const auto e = registry::scheme("logistic", "snsfd1");
    EXPECT_NEAR(an::nsfd_jacobian(logistic(), *e.rep, *e.config, 2.0, 1.25), oracle::snsfd1_J_2_125, 1e-13);
    const double phi0 = denominator::phi(e.config->denominator(), 1.25, 0.0);
    EXPECT_NEAR(an::nsfd_jacobian(logistic(), *e.rep, *e.config, 0.0, 1.25), 1.0 + 2.0 * phi0, 1e-10 * phi0);
}

TEST(Jacobian, FiniteDifferencesAgreeWithAnalytic) {
    const auto e = registry::scheme("logistic", "snsfd1");
    for (double h : {0.1, 1.25, 10.0}) {
        EXPECT_NEAR(an::step_jacobian(e.step, 2.0, h, 0.0), an::nsfd_jacobian(logistic(), *e.rep, *e.config, 2.0, h),
                    1e-6);
        const double j0 = an::nsfd_jacobian(logistic(), *e.rep, *e.config, 0.0, h);
        const double phi0 = denominator::phi(e.config->denominator(), h, 0.0);
        if (phi0 * 1e-6 < 1e-3) {
            EXPECT_NEAR(an::step_jacobian(e.step, 0.0, h, 0.0) / j0, 1.0, 1e-5);
        } else {
            // The map saturates near y ~ 1/phi, so the secant must stay well inside that scale.
            const double delta = 1e-7 / phi0;
            EXPECT_NEAR(e.step(delta, h) / delta / j0, 1.0, 1e-5);
        }
    }
}

TEST(SpuriousFixedPoints, HeunOnLogisticAtLargeStep) {
    const auto sp = an::spurious_fixed_points(logistic(), step_of("rk2"), 1.25);
    ASSERT_EQ(static_cast<int>(sp.size()), oracle::rk2_spurious_count);
    EXPECT_NEAR(sp[0].y, oracle::rk2_spurious_0, 1e-9);
    EXPECT_NEAR(sp[1].y, oracle::rk2_spurious_1, 1e-9);
}

TEST(SpuriousFixedPoints, NoneForNsfd) {
    for (double h : {0.1, 1.25, 10.0, 100.0}) {
        EXPECT_TRUE(an::spurious_fixed_points(logistic(), step_of("snsfd1"), h).empty()) << h;
    }
}

TEST(ElementaryStability, NsfdPassesHeunFails) {
    const auto e = registry::scheme("logistic", "snsfd1");
    const auto r = an::elementary_stability_audit(logistic(), *e.rep, *e.config, {0.1, 1.25, 10.0, 100.0});
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.checks.size(), 8u);
    const auto rk = an::elementary_stability_audit(logistic(), step_of("rk2"), {1.25});
    EXPECT_FALSE(rk.pass);
    EXPECT_FALSE(rk.spurious.empty());
}

TEST(ElementaryStability, ExactFlowMapPasses) {
    const auto& p = logistic();
    const integrator::StepMap flow{"exact-flow", [&p](double y, double h) { return p.exact_solution(h, y); }, false,
                                   integrator::ClaimedOrder::exact};
    EXPECT_TRUE(an::elementary_stability_audit(p, flow, {0.1, 1.25, 10.0}, 10'000).pass);
}

TEST(ElementaryStability, NonHyperbolicPointsSkipped) {
    ScalarProblem p;
    p.name = "square-minus";
    p.f = [](double y) { return y * y * (1 - y); };
    p.df = [](double y) { return 2 * y - 3 * y * y; };
    p.domain_hint = {0, 5};
    p.f0_nonneg = true;
    p = register_problem(p);
    const Representation rep{[](double y) { return y * y; }, [](double y) { return -y * y; }, Provenance::manual, ""};
    const auto cfg = SchemeConfig::from_beta(1.0, denominator::eq17_for(p, rep, 1.0, "eq17"), "s");
    const auto r = an::elementary_stability_audit(p, rep, cfg, {0.5});
    ASSERT_EQ(r.skipped_non_hyperbolic.size(), 1u);
    EXPECT_EQ(r.skipped_non_hyperbolic[0], 0.0);
}

TEST(SystemRates, LotkaVolterraSecondOrderQuick) {
    const auto lv = system::lotka_volterra({});
    const std::vector<double> beta{1.0, 1.0};
    const auto cfg = system::make_system_config(beta, system::second_order_denominators(lv, beta), "second-order");
    const auto t = an::system_convergence_rates(
        lv, [&](const system::Vec& x, double h) { return system::system_nsfd_step(lv, cfg, x, h); }, "second-order",
        {0.02, 0.01, 0.005}, 2.0, system::Vec{{2.0, 0.5}});
    EXPECT_NEAR(t.fitted_order(), 2.0, 0.1);
}
