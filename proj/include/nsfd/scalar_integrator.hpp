#pragma once

// One-step maps for scalar autonomous ODEs: the weighted non-local NSFD
// scheme and the baselines it is compared against, plus fixed-step
// integration and a high-accuracy reference oracle.

#include <functional>
#include <string>

#include "nsfd/core_model.hpp"

namespace nsfd::integrator {

enum class ClaimedOrder { first, second, exact };

const char* to_string(ClaimedOrder o);

struct StepMap {
    std::string label;
    std::function<double(double y, double h)> update;
    bool requires_representation = false;
    ClaimedOrder order_claimed = ClaimedOrder::first;

    double operator()(double y, double h) const { return update(y, h); }
};

/// y+ = (y + phi f+(y) + phi alpha y f-(y)) / (1 - phi beta f-(y)),
/// phi = phi(h, y). Throws NegativeState for y < 0 and InvalidWeights when
/// the config violates the weight constraints.
double nsfd_step(const Representation& rep, const SchemeConfig& config, double y, double h);

StepMap make_nsfd_map(const Representation& rep, const SchemeConfig& config,
                      ClaimedOrder order = ClaimedOrder::second);

double euler_step(const ScalarProblem& problem, double y, double h);

/// Heun's method.
double rk2_step(const ScalarProblem& problem, double y, double h);

/// Sign-switching positive scheme for y' = 2y - y^2 with phi = 1 - exp(-h).
double wood_kojouharov_step(double y, double h);

/// y' = y(1 - y^2), symmetric nonlinear term, phi = (1 - exp(-2h))/2.
double mickens_cubic_step(double y, double h);

/// y' = ((mu - 1) y - (mu + 1) y^2)/(1 + y), phi = (1 - exp(-R h))/R, R = mu - 1.
/// Throws ParameterOutOfRange for mu <= 1.
double mickens_monod_step(double y, double h, double mu);

/// y' = sin(pi y), phi = (1 - exp(-pi h))/pi.
double mickens_sine_step(double y, double h);

struct PowerLawParams {
    double a = 1.0;
    double b = 1.0;
    int m = 2;
};

enum class PowerLawDenominator {
    derived,  // (exp(a h) - 1)/a, the curvature-matched choice
    printed,  // (1 - exp(-a h))/a
};

/// Scheme for y' = a y - b y^m with weights beta = 1 on the y^(m-1) y_{n+1}
/// term. Throws ParameterOutOfRange for a, b <= 0 or m < 2.
double powerlaw_nsfd_step(const PowerLawParams& params, double y, double h,
                          PowerLawDenominator denominator = PowerLawDenominator::derived);

/// (y + phi * gain) / (1 + phi * loss) for gain, loss >= 0, switching to the
/// reciprocal form for large phi so that phi = +inf has a finite limit.
double rational_update(double y, double phi, double gain, double loss);

inline constexpr long long kMaxSteps = 100'000'000;

/// N = round(t_end / h) steps of `step` from y0.
Trajectory integrate(const StepMap& step, double y0, double h, double t_end,
                     const std::string& problem_name = "");

/// Classical RK4 with internal step h_out/1000 sampled on the output grid.
/// When the problem has an exact solution the oracle must agree with it to
/// 1e-10 or OracleSelfCheckFailed is thrown.
Trajectory reference_solution(const ScalarProblem& problem, double y0, double h_out, double t_end);

/// Number of steps for [0, t_end] at step h; warns on stderr when t_end is
/// not a multiple of h.
long long step_count(double h, double t_end);

}  // namespace nsfd::integrator
