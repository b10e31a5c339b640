#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nsfd/analysis.hpp"
#include "nsfd/numerics.hpp"
#include "nsfd/registry.hpp"
#include "nsfd/system_integrator.hpp"

using namespace nsfd;

namespace {

struct Case {
    std::string problem;
    std::string label;
};

void PrintTo(const Case& c, std::ostream* os) { *os << c.problem << "/" << c.label; }

std::vector<Case> all_cases(bool (*keep)(const registry::SchemeEntry&)) {
    std::vector<Case> out;
    for (const auto& n : registry::scalar_problem_names()) {
        for (const auto& e : registry::schemes(n)) {
            if (keep(e)) {
                out.push_back({n, e.label});
            }
        }
    }
    return out;
}

std::string case_name(const ::testing::TestParamInfo<Case>& info) {
    std::string s = info.param.problem + "_" + info.param.label;
    for (auto& c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c))) {
            c = '_';
        }
    }
    return s;
}

/// Exact one-step flow: closed form when available, otherwise the RK4 oracle.
double flow(const ScalarProblem& p, double y, double h) {
    if (p.has_exact()) {
        return p.exact_solution(h, y);
    }
    return integrator::reference_solution(p, y, h, h).final_state();
}

}  // namespace

class PositiveSchemes : public ::testing::TestWithParam<Case> {};

TEST_P(PositiveSchemes, RandomStartsAndStepsStayNonnegative) {
    const auto e = registry::scheme(GetParam().problem, GetParam().label);
    const auto r = analysis::random_positivity_audit(e.step, 200, 0.0, 10.0, 100.0, 500, 99);
    EXPECT_TRUE(r.pass) << "min " << r.min_state << " at y0 " << r.worst_y0 << " h " << r.worst_h;
    EXPECT_GE(r.min_state, 0.0);
}

INSTANTIATE_TEST_SUITE_P(Registry, PositiveSchemes,
                         ::testing::ValuesIn(all_cases([](const registry::SchemeEntry& e) { return e.claims.positive; })),
                         case_name);

class WeightedSchemes : public ::testing::TestWithParam<Case> {};

TEST_P(WeightedSchemes, FixedPointsAreExactlyTheEquilibria) {
    const auto e = registry::scheme(GetParam().problem, GetParam().label);
    const auto& p = registry::problem(GetParam().problem);
    for (double h : {0.1, 1.0, 10.0}) {
        for (double y : numerics::sample_points(p.domain_hint, 20'000)) {
            const double d = std::abs(e.step(y, h) - y);
            EXPECT_FALSE(d < 1e-12 && std::abs(p.f(y)) > 1e-6) << "y = " << y << " h = " << h;
        }
        for (const auto& eq : p.equilibria) {
            EXPECT_NEAR(e.step(eq.y_star, h), eq.y_star, 1e-10 * (1 + eq.y_star)) << "y* = " << eq.y_star;
        }
    }
}

TEST_P(WeightedSchemes, OneStepConsistency) {
    const auto e = registry::scheme(GetParam().problem, GetParam().label);
    const auto& p = registry::problem(GetParam().problem);
    for (double y : {0.25, 0.8, 1.6, 2.5}) {
        std::vector<double> hs;
        std::vector<double> ds;
        for (double h : {1e-2, 1e-3, 1e-4}) {
            hs.push_back(h);
            ds.push_back(std::abs(e.step(y, h) - y - h * p.f(y)));
        }
        // |G - y - h f| = O(h^2): the ratio d / h^2 must not grow.
        EXPECT_LE(ds[2] / (hs[2] * hs[2]), 2.0 * ds[0] / (hs[0] * hs[0]) + 1e-6) << "y = " << y;
    }
}

INSTANTIATE_TEST_SUITE_P(Registry, WeightedSchemes,
                         ::testing::ValuesIn(all_cases([](const registry::SchemeEntry& e) {
                             return e.rep.has_value() && e.config.has_value();
                         })),
                         case_name);

class DerivedSchemes : public ::testing::TestWithParam<Case> {};

TEST_P(DerivedSchemes, LocalErrorIsThirdOrder) {
    const auto e = registry::scheme(GetParam().problem, GetParam().label);
    const auto& p = registry::problem(GetParam().problem);
    if (e.step.order_claimed == integrator::ClaimedOrder::exact) {
        GTEST_SKIP() << "exact scheme";
    }
    for (double y : {0.5, 1.5}) {
        std::vector<double> hs{1e-2, 1e-3, 1e-4};
        std::vector<double> errs;
        for (double h : hs) {
            errs.push_back(std::abs(e.step(y, h) - flow(p, y, h)));
        }
        const double slope = numerics::log_log_slope(hs, errs);
        EXPECT_GE(slope, 2.8) << "y = " << y;
        EXPECT_LE(slope, 3.2) << "y = " << y;
    }
}

INSTANTIATE_TEST_SUITE_P(Registry, DerivedSchemes,
                         ::testing::ValuesIn(all_cases([](const registry::SchemeEntry& e) { return e.eq17_derived; })),
                         case_name);

TEST(SystemProperties, RandomPositivity) {
    for (const auto& sys : {system::lotka_volterra({}), system::sirs({})}) {
        const std::vector<double> beta(static_cast<std::size_t>(sys.dim), 1.0);
        const auto cfg = system::make_system_config(beta, system::second_order_denominators(sys, beta), "s");
        const auto r = analysis::random_system_positivity_audit(
            sys, [&](const system::Vec& x, double h) { return system::system_nsfd_step(sys, cfg, x, h); }, 100, 10.0,
            100.0, 300, 5);
        EXPECT_TRUE(r.pass) << sys.name;
    }
}
