#include "nsfd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "nsfd/denominator.hpp"
#include "nsfd/errors.hpp"
#include "nsfd/numerics.hpp"

namespace nsfd::analysis {

double RateTable::fitted_order() const {
    std::vector<double> hs;
    std::vector<double> es;
    for (const auto& r : rows) {
        if (!r.exact_to_machine) {
            hs.push_back(r.h);
            es.push_back(r.error);
        }
    }
    if (hs.size() < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return numerics::log_log_slope(hs, es);
}

bool RateTable::all_exact() const {
    return std::all_of(rows.begin(), rows.end(), [](const RateRow& r) { return r.exact_to_machine; });
}

double error_at_final(const Trajectory& traj, const Trajectory& reference) {
    const double T = traj.final_time();
    if (traj.size() != reference.size() ||
        std::abs(T - reference.final_time()) > 1e-12 * std::max(1.0, std::abs(T))) {
        std::ostringstream os;
        os << traj.size() << " points ending at t = " << T << " vs " << reference.size()
           << " points ending at t = " << reference.final_time();
        throw GridMismatch(os.str());
    }
    return std::abs(traj.final_state() - reference.final_state());
}

double error_at_final(const Trajectory& traj, const ScalarProblem& problem, double y0) {
    if (!problem.has_exact()) {
        throw std::invalid_argument(problem.name + " has no exact solution");
    }
    return std::abs(traj.final_state() - problem.exact_solution(traj.final_time(), y0));
}

double observed_rate(double h1, double e1, double h2, double e2) {
    return std::log(e1 / e2) / std::log(h1 / h2);
}

namespace {

constexpr double kOracleGridPoints = 1000.0;

void fill_rates(RateTable& table) {
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        auto& r = table.rows[i];
        r.exact_to_machine = r.error < kMachineExactError;
        if (i == 0 || r.exact_to_machine || table.rows[i - 1].exact_to_machine) {
            continue;
        }
        const auto& prev = table.rows[i - 1];
        r.rate = observed_rate(prev.h, prev.error, r.h, r.error);
    }
}

void check_h_list(const std::vector<double>& h_list) {
    if (h_list.size() < 2) {
        throw std::invalid_argument("convergence_rates needs at least two step sizes");
    }
    for (std::size_t i = 1; i < h_list.size(); ++i) {
        if (!(h_list[i] < h_list[i - 1])) {
            throw std::invalid_argument("h_list must be strictly decreasing");
        }
    }
}

}  // namespace

RateTable convergence_rates(const ScalarProblem& problem, const integrator::StepMap& step,
                            const std::vector<double>& h_list, double T, double y0) {
    check_h_list(h_list);
    RateTable table;
    table.scheme_label = step.label;
    table.problem_name = problem.name;
    table.T = T;
    double oracle = 0.0;
    if (!problem.has_exact()) {
        oracle = integrator::reference_solution(problem, y0, T / kOracleGridPoints, T).final_state();
    }
    for (double h : h_list) {
        const auto traj = integrator::integrate(step, y0, h, T, problem.name);
        const double ref = problem.has_exact() ? problem.exact_solution(traj.final_time(), y0) : oracle;
        table.rows.push_back({h, std::abs(traj.final_state() - ref), std::nullopt, false});
    }
    fill_rates(table);
    return table;
}

RateTable system_convergence_rates(const system::SystemProblem& sys, const system::SystemStep& step,
                                   const std::string& label, const std::vector<double>& h_list, double T,
                                   const system::Vec& x0) {
    check_h_list(h_list);
    RateTable table;
    table.scheme_label = label;
    table.problem_name = sys.name;
    table.T = T;
    const system::Vec ref =
        system::reference_system_solution(sys, x0, T / kOracleGridPoints, T).states.back();
    for (double h : h_list) {
        const auto traj = system::integrate_system_with(sys, step, label, x0, h, T);
        table.rows.push_back({h, (traj.states.back() - ref).cwiseAbs().maxCoeff(), std::nullopt, false});
    }
    fill_rates(table);
    return table;
}

namespace {

/// Runs one (y0, h) pair, stopping at the first negative or non-finite
/// iterate.
void run_pair(const integrator::StepMap& step, double y0, double h, std::size_t n_steps, PositivityReport& r) {
    double y = y0;
    ++r.runs;
    for (std::size_t k = 0; k < n_steps; ++k) {
        try {
            y = step(y, h);
        } catch (const NegativeState&) {
            y = -std::numeric_limits<double>::min();
        }
        if (y == std::numeric_limits<double>::infinity()) {
            ++r.overflow_runs;
            return;
        }
        if (std::isnan(y) || std::isinf(y)) {
            ++r.non_finite_iterates;
            return;
        }
        if (y < r.min_state) {
            r.min_state = y;
            r.worst_y0 = y0;
            r.worst_h = h;
        }
        if (y < 0.0) {
            ++r.negative_iterates;
            return;
        }
    }
}

PositivityReport start_report() {
    PositivityReport r;
    r.min_state = std::numeric_limits<double>::infinity();
    return r;
}

}  // namespace

PositivityReport positivity_audit(const integrator::StepMap& step, const std::vector<double>& y0_samples,
                                  const std::vector<double>& h_samples, std::size_t n_steps) {
    auto r = start_report();
    for (double y0 : y0_samples) {
        r.min_state = std::min(r.min_state, y0);
        for (double h : h_samples) {
            run_pair(step, y0, h, n_steps, r);
        }
    }
    r.pass = r.negative_iterates == 0 && r.non_finite_iterates == 0;
    return r;
}

PositivityReport random_positivity_audit(const integrator::StepMap& step, std::size_t n_pairs, double y0_lo,
                                         double y0_hi, double h_max, std::size_t n_steps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto r = start_report();
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const double y0 = y0_lo + (y0_hi - y0_lo) * u01(rng);
        const double h = h_max * (1.0 - u01(rng));
        run_pair(step, y0, h, n_steps, r);
    }
    r.pass = r.negative_iterates == 0 && r.non_finite_iterates == 0;
    return r;
}

PositivityReport random_system_positivity_audit(const system::SystemProblem& sys, const system::SystemStep& step,
                                                std::size_t n_pairs, double x_hi, double h_max,
                                                std::size_t n_steps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto r = start_report();
    for (std::size_t p = 0; p < n_pairs; ++p) {
        system::Vec x(sys.dim);
        for (int i = 0; i < sys.dim; ++i) {
            x[i] = x_hi * u01(rng);
        }
        const double h = h_max * (1.0 - u01(rng));
        const double x0_norm = x.maxCoeff();
        ++r.runs;
        for (std::size_t k = 0; k < n_steps; ++k) {
            try {
                x = step(x, h);
            } catch (const NegativeState&) {
                x.setConstant(-std::numeric_limits<double>::min());
            }
            if (!x.allFinite()) {
                const bool overflow = !x.hasNaN() && (x.array() >= 0.0).all();
                ++(overflow ? r.overflow_runs : r.non_finite_iterates);
                break;
            }
            const double m = x.minCoeff();
            if (m < r.min_state) {
                r.min_state = m;
                r.worst_y0 = x0_norm;
                r.worst_h = h;
            }
            if (m < 0.0) {
                ++r.negative_iterates;
                break;
            }
        }
    }
    r.pass = r.negative_iterates == 0 && r.non_finite_iterates == 0;
    return r;
}

double nsfd_jacobian(const ScalarProblem& problem, const Representation& rep, const SchemeConfig& config,
                     double y_star, double h) {
    const double phi = denominator::phi(config.denominator(), h, y_star);
    return 1.0 + problem.df(y_star) / (1.0 / phi - config.beta() * rep.f_minus(y_star));
}

double step_jacobian(const integrator::StepMap& step, double y, double h, double lower_bound) {
    const double delta = 1e-6 * (1.0 + std::abs(y));
    if (y - delta < lower_bound) {
        return (-3.0 * step(y, h) + 4.0 * step(y + delta, h) - step(y + 2.0 * delta, h)) / (2.0 * delta);
    }
    return (step(y + delta, h) - step(y - delta, h)) / (2.0 * delta);
}

std::vector<SpuriousFixedPoint> spurious_fixed_points(const ScalarProblem& problem,
                                                      const integrator::StepMap& step, double h, std::size_t n) {
    const Interval dom{std::max(0.0, problem.domain_hint.lo), problem.domain_hint.hi};
    const auto displacement = [&](double y) { return step(y, h) - y; };
    const auto is_equilibrium = [&](double y) {
        if (std::abs(problem.f(y)) <= 1e-6) {
            return true;
        }
        return std::any_of(problem.equilibria.begin(), problem.equilibria.end(), [&](const Equilibrium& e) {
            return std::abs(y - e.y_star) <= 1e-6 * (1.0 + std::abs(e.y_star));
        });
    };

    std::vector<SpuriousFixedPoint> out;
    const auto record = [&](double y) {
        if (is_equilibrium(y)) {
            return;
        }
        if (!out.empty() && std::abs(out.back().y - y) <= 1e-8 * (1.0 + std::abs(y))) {
            return;
        }
        out.push_back({h, y, problem.f(y)});
    };

    const auto grid = numerics::uniform_grid(dom, n);
    double prev_y = grid.front();
    double prev_d = displacement(prev_y);
    if (std::isfinite(prev_d) && std::abs(prev_d) < 1e-12) {
        record(prev_y);
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double y = grid[i];
        const double d = displacement(y);
        if (std::isfinite(d) && std::abs(d) < 1e-12) {
            record(y);
        } else if (std::isfinite(d) && std::isfinite(prev_d) && prev_d != 0.0 &&
                   std::signbit(d) != std::signbit(prev_d)) {
            const double r = numerics::bisect_root(displacement, prev_y, y);
            // A sign flip across a pole is not a fixed point.
            if (std::abs(displacement(r)) <= 1e-8 * (1.0 + std::abs(r))) {
                record(r);
            }
        }
        prev_y = y;
        prev_d = d;
    }
    return out;
}

namespace {

bool consistent(Stability s, double J) {
    return s == Stability::stable ? std::abs(J) < 1.0 : std::abs(J) > 1.0;
}

template <typename JacobianFn>
StabilityReport audit(const ScalarProblem& problem, const integrator::StepMap& step,
                      const std::vector<double>& h_samples, std::size_t scan_points, JacobianFn&& jac) {
    StabilityReport r;
    for (const auto& eq : problem.equilibria) {
        if (eq.classification == Stability::non_hyperbolic) {
            r.skipped_non_hyperbolic.push_back(eq.y_star);
            continue;
        }
        for (double h : h_samples) {
            const double J = jac(eq.y_star, h);
            r.checks.push_back({eq.y_star, eq.classification, h, J, consistent(eq.classification, J)});
        }
    }
    for (double h : h_samples) {
        const auto sp = spurious_fixed_points(problem, step, h, scan_points);
        r.spurious.insert(r.spurious.end(), sp.begin(), sp.end());
    }
    r.pass = r.spurious.empty() &&
             std::all_of(r.checks.begin(), r.checks.end(), [](const EquilibriumCheck& c) { return c.consistent; });
    return r;
}

}  // namespace

StabilityReport elementary_stability_audit(const ScalarProblem& problem, const Representation& rep,
                                           const SchemeConfig& config, const std::vector<double>& h_samples,
                                           std::size_t scan_points) {
    const auto step = integrator::make_nsfd_map(rep, config);
    return audit(problem, step, h_samples, scan_points,
                 [&](double y, double h) { return nsfd_jacobian(problem, rep, config, y, h); });
}

StabilityReport elementary_stability_audit(const ScalarProblem& problem, const integrator::StepMap& step,
                                           const std::vector<double>& h_samples, std::size_t scan_points) {
    const double lower = std::max(0.0, problem.domain_hint.lo);
    return audit(problem, step, h_samples, scan_points,
                 [&](double y, double h) { return step_jacobian(step, y, h, lower); });
}

}  // namespace nsfd::analysis
