#include "nsfd/system_integrator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <utility>

#include <boost/numeric/odeint/integrate/integrate_n_steps.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>

#include "nsfd/denominator.hpp"
#include "nsfd/errors.hpp"
#include "nsfd/scalar_integrator.hpp"

namespace nsfd::system {

double affine_plus(const SystemProblem& sys, int i, const Vec& x) {
    const auto& c = sys.components[static_cast<std::size_t>(i)];
    return c.form == SplitForm::affine ? c.plus(x) : x[i] * c.plus(x);
}

double affine_minus(const SystemProblem& sys, int i, const Vec& x) {
    const auto& c = sys.components[static_cast<std::size_t>(i)];
    return c.form == SplitForm::affine ? c.minus(x) : -c.minus(x);
}

bool SystemSchemeConfig::weights_valid() const {
    if (alpha.size() != beta.size()) {
        return false;
    }
    for (std::size_t i = 0; i < beta.size(); ++i) {
        if (!weights_satisfy_h4(alpha[i], beta[i])) {
            return false;
        }
    }
    return true;
}

SystemSchemeConfig make_system_config(std::vector<double> beta, SystemDenominator phi, std::string label) {
    SystemSchemeConfig cfg;
    cfg.beta = std::move(beta);
    for (double b : cfg.beta) {
        cfg.alpha.push_back(1.0 - b);
    }
    cfg.phi = std::move(phi);
    cfg.label = std::move(label);
    if (!cfg.weights_valid()) {
        throw InvalidWeights(cfg.label + ": every beta_i must be >= 1 with alpha_i = 1 - beta_i");
    }
    return cfg;
}

SystemDenominator plain_denominators(int dim) {
    return [dim](const Vec&, double h) { return Vec::Constant(dim, h); };
}

SystemDenominator second_order_denominators(const SystemProblem& sys, const std::vector<double>& beta) {
    if (!sys.jacobian) {
        throw JacobianMissing(sys.name + " has no Jacobian");
    }
    if (beta.size() != static_cast<std::size_t>(sys.dim)) {
        throw std::invalid_argument("second_order_denominators: one beta per component required");
    }
    return [sys, beta](const Vec& x, double h) {
        const Vec F = sys.F(x);
        const Vec curvature = sys.jacobian(x) * F;  // d^2 x_i / dt^2 along the flow
        Vec phi(sys.dim);
        for (int i = 0; i < sys.dim; ++i) {
            const double fi = F[i];
            const double gi = curvature[i];
            if (std::abs(fi) <= kNearZeroRhs || h * std::abs(gi) >= std::abs(fi)) {
                phi[i] = h;
                continue;
            }
            const double lambda = -gi / fi + 2.0 * beta[static_cast<std::size_t>(i)] * affine_minus(sys, i, x);
            phi[i] = h * denominator::phim(h * lambda);
        }
        return phi;
    };
}

Vec system_nsfd_step(const SystemProblem& sys, const SystemSchemeConfig& cfg, const Vec& x, double h) {
    if (!(h > 0.0)) {
        throw NonPositiveStep("system step needs h > 0");
    }
    for (int i = 0; i < sys.dim; ++i) {
        if (!(x[i] >= 0.0)) {
            std::ostringstream os;
            os << sys.name << ": component " << i << " = " << x[i];
            throw NegativeState(os.str());
        }
    }
    const Vec phi = cfg.phi(x, h);
    Vec out(sys.dim);
    for (int i = 0; i < sys.dim; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const double fp = affine_plus(sys, i, x);
        const double fm = affine_minus(sys, i, x);
        if (fp + x[i] * fm == 0.0) {
            out[i] = x[i];
            continue;
        }
        const double gain = fp + cfg.alpha[k] * x[i] * fm;
        const double loss = -cfg.beta[k] * fm;
        out[i] = integrator::rational_update(x[i], phi[i], gain, loss);
    }
    return out;
}

Vec system_euler_step(const SystemProblem& sys, const Vec& x, double h) { return x + h * sys.F(x); }

SystemTrajectory integrate_system_with(const SystemProblem& sys, const SystemStep& step,
                                       const std::string& label, const Vec& x0, double h, double t_end) {
    const long long n = integrator::step_count(h, t_end);
    SystemTrajectory traj;
    traj.scheme_label = label;
    traj.problem_name = sys.name;
    traj.h = h;
    traj.times.reserve(static_cast<std::size_t>(n) + 1);
    traj.states.reserve(static_cast<std::size_t>(n) + 1);
    traj.diagnostics.assign(sys.conserved.size(), {});

    const auto record = [&](double t, const Vec& x) {
        traj.times.push_back(t);
        traj.states.push_back(x);
        const double m = x.minCoeff();
        traj.min_component = std::min(traj.min_component, m);
        if (m < 0.0) {
            ++traj.positivity_violations;
        }
        for (std::size_t d = 0; d < sys.conserved.size(); ++d) {
            traj.diagnostics[d].push_back(sys.conserved[d].fn(x));
        }
    };

    Vec x = x0;
    record(0.0, x);
    for (long long k = 1; k <= n; ++k) {
        x = step(x, h);
        record(static_cast<double>(k) * h, x);
    }
    return traj;
}

SystemTrajectory integrate_system(const SystemProblem& sys, const SystemSchemeConfig& cfg,
                                  const Vec& x0, double h, double t_end) {
    return integrate_system_with(
        sys, [&](const Vec& x, double step) { return system_nsfd_step(sys, cfg, x, step); }, cfg.label,
        x0, h, t_end);
}

SystemTrajectory reference_system_solution(const SystemProblem& sys, const Vec& x0, double h_out,
                                           double t_end) {
    namespace odeint = boost::numeric::odeint;
    constexpr int kSubsteps = 1000;
    const long long n = integrator::step_count(h_out, t_end);
    if (n * kSubsteps > integrator::kMaxSteps) {
        throw StepCountOverflow("oracle needs " + std::to_string(n * kSubsteps) + " internal steps");
    }
    using State = std::vector<double>;
    const auto rhs = [&](const State& s, State& dsdt, double) {
        const Vec v = sys.F(Eigen::Map<const Vec>(s.data(), static_cast<Eigen::Index>(s.size())));
        std::copy(v.data(), v.data() + v.size(), dsdt.begin());
    };
    odeint::runge_kutta4<State> stepper;
    State s(x0.data(), x0.data() + x0.size());
    return integrate_system_with(
        sys,
        [&](const Vec&, double h) {
            odeint::integrate_n_steps(stepper, rhs, s, 0.0, h / kSubsteps, kSubsteps);
            return Vec(Eigen::Map<const Vec>(s.data(), static_cast<Eigen::Index>(s.size())));
        },
        "reference_rk4", x0, h_out, t_end);
}

SplitSignReport validate_splits(const SystemProblem& sys, std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SplitSignReport r;
    r.samples = samples;
    Vec x(sys.dim);
    for (std::size_t s = 0; s < samples; ++s) {
        for (int i = 0; i < sys.dim; ++i) {
            std::uniform_real_distribution<double> u(sys.box_lo[i], sys.box_hi[i]);
            x[i] = u(rng);
        }
        const Vec F = sys.F(x);
        for (int i = 0; i < sys.dim; ++i) {
            const auto& c = sys.components[static_cast<std::size_t>(i)];
            const double p = c.plus(x);
            const double q = c.minus(x);
            const double violation = c.form == SplitForm::affine ? std::max(-p, q) : std::max(-p, -q);
            r.max_sign_violation = std::max(r.max_sign_violation, violation);
            const double fp = affine_plus(sys, i, x);
            const double fm = affine_minus(sys, i, x);
            const double res = std::abs(fp + x[i] * fm - F[i]) / (1.0 + std::abs(fp) + std::abs(x[i] * fm));
            r.max_residual = std::max(r.max_residual, res);
        }
    }
    r.pass = r.max_sign_violation <= 1e-12 && r.max_residual <= 1e-10;
    return r;
}

Mat step_jacobian_at_equilibrium(const SystemProblem& sys, const std::vector<double>& beta,
                                 const Vec& x_star, const Vec& phi) {
    if (!sys.jacobian) {
        throw JacobianMissing(sys.name + " has no Jacobian");
    }
    const Mat grad = sys.jacobian(x_star);
    Mat J = Mat::Identity(sys.dim, sys.dim);
    for (int i = 0; i < sys.dim; ++i) {
        const double fm = affine_minus(sys, i, x_star);
        const double scale = 1.0 / (1.0 / phi[i] - beta[static_cast<std::size_t>(i)] * fm);
        J.row(i) += scale * grad.row(i);
    }
    return J;
}

namespace {

int neutral_count(const Mat& grad) {
    const Eigen::VectorXcd mu = grad.eigenvalues();
    const double scale = 1.0 + grad.norm();
    int k = 0;
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
        if (std::abs(mu[i]) <= 1e-9 * scale) {
            ++k;
        }
    }
    return k;
}

}  // namespace

double transverse_spectral_radius(const SystemProblem& sys, const std::vector<double>& beta,
                                  const Vec& x_star, const Vec& phi) {
    const int k = neutral_count(sys.jacobian(x_star));
    const Eigen::VectorXcd ev = step_jacobian_at_equilibrium(sys, beta, x_star, phi).eigenvalues();
    std::vector<std::complex<double>> vals(ev.data(), ev.data() + ev.size());
    for (int r = 0; r < k && !vals.empty(); ++r) {
        const auto it = std::min_element(vals.begin(), vals.end(), [](auto a, auto b) {
            return std::abs(a - 1.0) < std::abs(b - 1.0);
        });
        vals.erase(it);
    }
    double rho = 0.0;
    for (const auto& v : vals) {
        rho = std::max(rho, std::abs(v));
    }
    return rho;
}

bool equilibrium_is_stable(const SystemProblem& sys, const Vec& x_star) {
    const Mat grad = sys.jacobian(x_star);
    const Eigen::VectorXcd mu = grad.eigenvalues();
    const double scale = 1.0 + grad.norm();
    bool any = false;
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
        if (std::abs(mu[i]) <= 1e-9 * scale) {
            continue;
        }
        any = true;
        if (!(mu[i].real() < -1e-12)) {
            return false;
        }
    }
    return any;
}

namespace {

double first_crossing(const std::function<double(double)>& rho) {
    constexpr int kGrid = 400;
    double prev = 1e-6;
    for (int k = 0; k <= kGrid; ++k) {
        const double phi = std::pow(10.0, -6.0 + 12.0 * k / kGrid);
        if (rho(phi) >= 1.0) {
            double lo = prev;
            double hi = phi;
            for (int it = 0; it < 100; ++it) {
                const double mid = std::sqrt(lo * hi);
                (rho(mid) >= 1.0 ? hi : lo) = mid;
            }
            return lo;
        }
        prev = phi;
    }
    return std::numeric_limits<double>::infinity();
}

}  // namespace

ThresholdReport stability_thresholds(const SystemProblem& sys, const std::vector<double>& beta,
                                     const Vec& x_star) {
    ThresholdReport r;
    r.x_star = x_star;
    r.continuous_stable = equilibrium_is_stable(sys, x_star);
    r.phi_threshold = first_crossing([&](double phi) {
        return transverse_spectral_radius(sys, beta, x_star, Vec::Constant(sys.dim, phi));
    });
    for (int i = 0; i < sys.dim; ++i) {
        r.component_thresholds.push_back(first_crossing([&](double phi) {
            Vec v = Vec::Constant(sys.dim, 1e-6);
            v[i] = phi;
            return transverse_spectral_radius(sys, beta, x_star, v);
        }));
    }
    return r;
}

SystemProblem lotka_volterra(const LotkaVolterraParams& p) {
    SystemProblem s;
    s.name = "lv";
    s.dim = 2;
    s.component_names = {"x", "y"};
    s.F = [p](const Vec& x) {
        Vec v(2);
        v << p.a * x[0] - p.b * x[0] * x[1], -p.c * x[1] + p.e * x[0] * x[1];
        return v;
    };
    s.jacobian = [p](const Vec& x) {
        Mat J(2, 2);
        J << p.a - p.b * x[1], -p.b * x[0], p.e * x[1], -p.c + p.e * x[0];
        return J;
    };
    s.components = {
        {SplitForm::product, [p](const Vec&) { return p.a; }, [p](const Vec& x) { return p.b * x[1]; }},
        {SplitForm::product, [p](const Vec& x) { return p.e * x[0]; }, [p](const Vec&) { return p.c; }},
    };
    s.conserved = {{"first_integral", [p](const Vec& x) {
                        return p.e * x[0] - p.c * std::log(x[0]) + p.b * x[1] - p.a * std::log(x[1]);
                    }}};
    s.box_lo = Vec::Zero(2);
    s.box_hi = Vec::Constant(2, 10.0);
    return s;
}

SystemProblem sirs(const SirsParams& p) {
    SystemProblem s;
    s.name = "sirs";
    s.dim = 3;
    s.component_names = {"S", "I", "R"};
    const double k = p.beta / p.N;
    s.F = [p, k](const Vec& x) {
        Vec v(3);
        v << -k * x[0] * x[1] + p.mu * x[2], k * x[0] * x[1] - p.gamma * x[1], p.gamma * x[1] - p.mu * x[2];
        return v;
    };
    s.jacobian = [p, k](const Vec& x) {
        Mat J(3, 3);
        J << -k * x[1], -k * x[0], p.mu,
             k * x[1], k * x[0] - p.gamma, 0.0,
             0.0, p.gamma, -p.mu;
        return J;
    };
    s.components = {
        {SplitForm::affine, [p](const Vec& x) { return p.mu * x[2]; }, [k](const Vec& x) { return -k * x[1]; }},
        {SplitForm::affine, [k](const Vec& x) { return k * x[0] * x[1]; }, [p](const Vec&) { return -p.gamma; }},
        {SplitForm::affine, [p](const Vec& x) { return p.gamma * x[1]; }, [p](const Vec&) { return -p.mu; }},
    };
    s.conserved = {{"total_population", [](const Vec& x) { return x.sum(); }}};
    s.box_lo = Vec::Zero(3);
    s.box_hi = Vec::Constant(3, 10.0);
    return s;
}

Vec sirs_endemic_equilibrium(const SirsParams& p, double total) {
    const double S = p.gamma * p.N / p.beta;
    const double I = (total - S) / (1.0 + p.gamma / p.mu);
    Vec v(3);
    v << S, I, p.gamma * I / p.mu;
    return v;
}

}  // namespace nsfd::system
