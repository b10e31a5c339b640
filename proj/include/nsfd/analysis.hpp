#pragma once

// Error/convergence measurement and the structural audits: positivity,
// elementary stability (fixed points and their local stability type).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nsfd/core_model.hpp"
#include "nsfd/scalar_integrator.hpp"
#include "nsfd/system_integrator.hpp"

namespace nsfd::analysis {

/// Errors below this are treated as exact to machine precision.
inline constexpr double kMachineExactError = 1e-13;

struct RateRow {
    double h = 0.0;
    double error = 0.0;
    std::optional<double> rate;  // empty on the first row or next to an exact row
    bool exact_to_machine = false;
};

struct RateTable {
    std::vector<RateRow> rows;  // decreasing h
    std::string scheme_label;
    std::string problem_name;
    double T = 0.0;

    /// Least-squares slope of log error vs log h over non-exact rows; NaN
    /// with fewer than two usable rows.
    [[nodiscard]] double fitted_order() const;
    [[nodiscard]] bool all_exact() const;
};

/// |y_N - reference(T)|. Throws GridMismatch unless both trajectories end at
/// the same time.
double error_at_final(const Trajectory& traj, const Trajectory& reference);
double error_at_final(const Trajectory& traj, const ScalarProblem& problem, double y0);

/// log_{h1/h2}(e1/e2).
double observed_rate(double h1, double e1, double h2, double e2);

/// Reference is the exact solution when the problem has one, otherwise the
/// RK4 oracle on the finest grid.
RateTable convergence_rates(const ScalarProblem& problem, const integrator::StepMap& step,
                            const std::vector<double>& h_list, double T, double y0);

/// Max-norm error at T against the RK4 system oracle.
RateTable system_convergence_rates(const system::SystemProblem& sys, const system::SystemStep& step,
                                   const std::string& label, const std::vector<double>& h_list, double T,
                                   const system::Vec& x0);

struct PositivityReport {
    std::size_t runs = 0;
    std::size_t negative_iterates = 0;
    std::size_t non_finite_iterates = 0;  // NaN or -inf; counts as a failure
    std::size_t overflow_runs = 0;        // +inf with every other component nonnegative
    double min_state = 0.0;
    double worst_y0 = 0.0;
    double worst_h = 0.0;
    bool pass = false;
};

/// Every (y0, h) combination for n_steps steps; passes iff no iterate is
/// negative, NaN or -inf. A run that overflows to +inf stops there and is
/// tallied separately.
PositivityReport positivity_audit(const integrator::StepMap& step, const std::vector<double>& y0_samples,
                                  const std::vector<double>& h_samples, std::size_t n_steps);

/// n_pairs random (y0, h) with y0 uniform in [y0_lo, y0_hi] and h uniform in
/// (0, h_max].
PositivityReport random_positivity_audit(const integrator::StepMap& step, std::size_t n_pairs, double y0_lo,
                                         double y0_hi, double h_max, std::size_t n_steps, std::uint64_t seed);

PositivityReport random_system_positivity_audit(const system::SystemProblem& sys, const system::SystemStep& step,
                                                std::size_t n_pairs, double x_hi, double h_max,
                                                std::size_t n_steps, std::uint64_t seed);

struct EquilibriumCheck {
    double y_star = 0.0;
    Stability continuous = Stability::non_hyperbolic;
    double h = 0.0;
    double jacobian = 0.0;
    bool consistent = false;
};

struct SpuriousFixedPoint {
    double h = 0.0;
    double y = 0.0;
    double f_at_y = 0.0;
};

struct StabilityReport {
    std::vector<EquilibriumCheck> checks;
    std::vector<SpuriousFixedPoint> spurious;
    std::vector<double> skipped_non_hyperbolic;
    bool pass = false;
};

inline constexpr std::size_t kFixedPointScan = 100'000;

/// J(y*) = 1 + phi f'(y*) / (1 - phi beta f-(y*)).
double nsfd_jacobian(const ScalarProblem& problem, const Representation& rep, const SchemeConfig& config,
                     double y_star, double h);

/// Derivative of an arbitrary step map by finite differences (one-sided at
/// the left end of the domain).
double step_jacobian(const integrator::StepMap& step, double y, double h, double lower_bound);

/// Zeros of G(y) - y on the domain that are not equilibria of f.
std::vector<SpuriousFixedPoint> spurious_fixed_points(const ScalarProblem& problem,
                                                      const integrator::StepMap& step, double h,
                                                      std::size_t n = kFixedPointScan);

/// Uses the closed-form Jacobian of the weighted scheme.
StabilityReport elementary_stability_audit(const ScalarProblem& problem, const Representation& rep,
                                           const SchemeConfig& config, const std::vector<double>& h_samples,
                                           std::size_t scan_points = kFixedPointScan);

/// Any step map; Jacobian by finite differences.
StabilityReport elementary_stability_audit(const ScalarProblem& problem, const integrator::StepMap& step,
                                           const std::vector<double>& h_samples,
                                           std::size_t scan_points = kFixedPointScan);

}  // namespace nsfd::analysis
