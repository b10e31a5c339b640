#include "nsfd/scalar_integrator.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/numeric/odeint/integrate/integrate_n_steps.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>

#include "nsfd/denominator.hpp"
#include "nsfd/errors.hpp"

namespace nsfd::integrator {

namespace {

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

double rational_update(double y, double phi, double gain, double loss) {
    if (phi <= 1.0) {
        return (y + phi * gain) / (1.0 + phi * loss);
    }
    const double inv = 1.0 / phi;
    if (inv == 0.0) {
        if (loss > 0.0) {
            return gain / loss;
        }
        return gain > 0.0 ? INFINITY : y;
    }
    return (y * inv + gain) / (inv + loss);
}

const char* to_string(ClaimedOrder o) {
    switch (o) {
        case ClaimedOrder::first: return "1";
        case ClaimedOrder::second: return "2";
        case ClaimedOrder::exact: return "exact";
    }
    return "?";
}

double nsfd_step(const Representation& rep, const SchemeConfig& config, double y, double h) {
    if (!(y >= 0.0)) {
        throw NegativeState("y_n = " + num(y));
    }
    const double fp = rep.f_plus(y);
    const double fm = rep.f_minus(y);
    if (fp + y * fm == 0.0) {
        return y;
    }
    const double phi = denominator::phi(config.denominator(), h, y);
    const double gain = fp + config.alpha() * y * fm;
    const double loss = -config.beta() * fm;
    return rational_update(y, phi, gain, loss);
}

StepMap make_nsfd_map(const Representation& rep, const SchemeConfig& config, ClaimedOrder order) {
    if (!config.weights_valid()) {
        throw InvalidWeights(config.label() + ": alpha = " + num(config.alpha()) +
                             ", beta = " + num(config.beta()));
    }
    return {config.label(), [rep, config](double y, double h) { return nsfd_step(rep, config, y, h); },
            true, order};
}

double euler_step(const ScalarProblem& problem, double y, double h) { return y + h * problem.f(y); }

double rk2_step(const ScalarProblem& problem, double y, double h) {
    const double k1 = problem.f(y);
    const double k2 = problem.f(y + h * k1);
    return y + 0.5 * h * (k1 + k2);
}

double wood_kojouharov_step(double y, double h) {
    const double phi = -std::expm1(-h);
    const double f = 2.0 * y - y * y;
    if (f >= 0.0) {
        return y + phi * f;
    }
    return y * y / (y - phi * f);
}

double mickens_cubic_step(double y, double h) {
    const double phi = h * denominator::phim(2.0 * h);
    return y * ((2.0 + phi) + phi * y * y) / ((2.0 - phi) + 3.0 * phi * y * y);
}

double mickens_monod_step(double y, double h, double mu) {
    if (!(mu > 1.0)) {
        throw ParameterOutOfRange("Monod requires mu > 1, got " + num(mu));
    }
    const double phi = h * denominator::phim((mu - 1.0) * h);
    const double gain = (mu - 1.0) * y / (1.0 + y);
    const double loss = (mu + 1.0) * y / (1.0 + y);
    return rational_update(y, phi, gain, loss);
}

double mickens_sine_step(double y, double h) {
    constexpr double pi = std::numbers::pi;
    const double phi = h * denominator::phim(pi * h);
    return y + phi * std::sin(pi * y);
}

double powerlaw_nsfd_step(const PowerLawParams& p, double y, double h, PowerLawDenominator which) {
    if (!(p.a > 0.0) || !(p.b > 0.0) || p.m < 2) {
        throw ParameterOutOfRange("power law needs a, b > 0 and integer m >= 2");
    }
    if (!(y >= 0.0)) {
        throw NegativeState("y_n = " + num(y));
    }
    const double rate = which == PowerLawDenominator::derived ? -p.a : p.a;
    const double phi = h * denominator::phim(rate * h);
    const double half_m = 0.5 * p.m;
    const double ym1 = std::pow(y, p.m - 1);
    const double gain = p.a * y - p.b * (1.0 - half_m) * ym1 * y;
    const double loss = p.b * half_m * ym1;
    if (gain == loss * y) {
        return y;
    }
    return rational_update(y, phi, gain, loss);
}

long long step_count(double h, double t_end) {
    if (!(h > 0.0)) {
        throw NonPositiveStep("h = " + num(h));
    }
    const double ratio = t_end / h;
    if (!(ratio < static_cast<double>(kMaxSteps) + 0.5)) {
        throw StepCountOverflow(num(ratio) + " steps requested");
    }
    const auto n = static_cast<long long>(std::llround(ratio));
    if (std::abs(static_cast<double>(n) * h - t_end) > 1e-9 * std::max(1.0, std::abs(t_end))) {
        std::cerr << "warning: t_end = " << t_end << " is not a multiple of h = " << h
                  << "; integrating " << n << " steps to t = " << static_cast<double>(n) * h << '\n';
    }
    return n;
}

Trajectory integrate(const StepMap& step, double y0, double h, double t_end,
                     const std::string& problem_name) {
    const long long n = step_count(h, t_end);
    Trajectory traj;
    traj.scheme_label = step.label;
    traj.problem_name = problem_name;
    traj.h = h;
    traj.times.reserve(static_cast<std::size_t>(n) + 1);
    traj.states.reserve(static_cast<std::size_t>(n) + 1);
    double y = y0;
    traj.times.push_back(0.0);
    traj.states.push_back(y);
    for (long long k = 1; k <= n; ++k) {
        y = step(y, h);
        if (y < 0.0) {
            ++traj.positivity_violations;
        }
        traj.times.push_back(static_cast<double>(k) * h);
        traj.states.push_back(y);
    }
    return traj;
}

Trajectory reference_solution(const ScalarProblem& problem, double y0, double h_out, double t_end) {
    namespace odeint = boost::numeric::odeint;
    constexpr int kSubsteps = 1000;
    const long long n = step_count(h_out, t_end);
    if (n * kSubsteps > kMaxSteps) {
        throw StepCountOverflow("oracle needs " + std::to_string(n * kSubsteps) + " internal steps");
    }
    using State = std::vector<double>;
    const auto rhs = [&](const State& x, State& dxdt, double) { dxdt[0] = problem.f(x[0]); };
    odeint::runge_kutta4<State> stepper;
    const double h_int = h_out / kSubsteps;

    Trajectory traj;
    traj.scheme_label = "reference_rk4";
    traj.problem_name = problem.name;
    traj.h = h_out;
    State x{y0};
    traj.times.push_back(0.0);
    traj.states.push_back(y0);
    for (long long k = 1; k <= n; ++k) {
        const double t0 = static_cast<double>(k - 1) * h_out;
        odeint::integrate_n_steps(stepper, rhs, x, t0, h_int, kSubsteps);
        const double t = static_cast<double>(k) * h_out;
        traj.times.push_back(t);
        traj.states.push_back(x[0]);
        if (problem.has_exact()) {
            const double exact = problem.exact_solution(t, y0);
            if (!(std::abs(exact - x[0]) <= 1e-10)) {
                throw OracleSelfCheckFailed(problem.name + ": oracle " + num(x[0]) + " vs exact " +
                                            num(exact) + " at t = " + num(t));
            }
        }
    }
    return traj;
}

}  // namespace nsfd::integrator
