#pragma once

// Componentwise NSFD updates for positive systems x' = F(x) whose components
// split as f_i = f_i+ + x_i f_i- (affine form) or f_i = x_i (p_i - q_i) with
// p_i, q_i >= 0 (product form).

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nsfd::system {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using VectorField = std::function<Vec(const Vec&)>;
using JacobianFn = std::function<Mat(const Vec&)>;
using ComponentFn = std::function<double(const Vec&)>;

enum class SplitForm { product, affine };

struct ComponentSplit {
    SplitForm form = SplitForm::affine;
    ComponentFn plus;   // product: p_i >= 0;  affine: f_i+ >= 0
    ComponentFn minus;  // product: q_i >= 0;  affine: f_i- <= 0
};

struct Diagnostic {
    std::string name;
    ComponentFn fn;
};

struct SystemProblem {
    std::string name;
    int dim = 0;
    VectorField F;
    std::vector<ComponentSplit> components;
    JacobianFn jacobian;  // optional
    std::vector<Diagnostic> conserved;
    std::vector<std::string> component_names;
    Vec box_lo;  // sampling box for split sign checks
    Vec box_hi;
};

/// Affine-form parts of component i: f_i = plus + x_i * minus.
double affine_plus(const SystemProblem& sys, int i, const Vec& x);
double affine_minus(const SystemProblem& sys, int i, const Vec& x);

/// All denominators phi_i(x, h) at once, evaluated at the old state.
using SystemDenominator = std::function<Vec(const Vec& x, double h)>;

struct SystemSchemeConfig {
    std::vector<double> alpha;
    std::vector<double> beta;
    SystemDenominator phi;
    std::string label;

    [[nodiscard]] bool weights_valid() const;
};

/// alpha_i = 1 - beta_i. Throws InvalidWeights unless every beta_i >= 1.
SystemSchemeConfig make_system_config(std::vector<double> beta, SystemDenominator phi, std::string label);

/// phi_i = h.
SystemDenominator plain_denominators(int dim);

inline constexpr double kNearZeroRhs = 1e-10;

/// phi_i = h * phim(h * lambda_i) with
///   lambda_i = -(grad f_i . F)/f_i + 2 beta_i f_i-,
/// falling back to phi_i = h where |f_i| <= kNearZeroRhs or where
/// h |grad f_i . F| >= |f_i| (the curvature term is singular near a sign
/// change of f_i). Throws JacobianMissing.
SystemDenominator second_order_denominators(const SystemProblem& sys, const std::vector<double>& beta);

/// Throws NegativeState for a negative component.
Vec system_nsfd_step(const SystemProblem& sys, const SystemSchemeConfig& cfg, const Vec& x, double h);

Vec system_euler_step(const SystemProblem& sys, const Vec& x, double h);

struct SystemTrajectory {
    std::vector<double> times;
    std::vector<Vec> states;
    std::vector<std::vector<double>> diagnostics;  // [diagnostic][step]
    std::string scheme_label;
    std::string problem_name;
    double h = 0.0;
    std::size_t positivity_violations = 0;
    double min_component = std::numeric_limits<double>::infinity();
};

using SystemStep = std::function<Vec(const Vec& x, double h)>;

SystemTrajectory integrate_system(const SystemProblem& sys, const SystemSchemeConfig& cfg,
                                  const Vec& x0, double h, double t_end);
SystemTrajectory integrate_system_with(const SystemProblem& sys, const SystemStep& step,
                                       const std::string& label, const Vec& x0, double h, double t_end);

/// RK4 at h_out/1000 sampled on the output grid.
SystemTrajectory reference_system_solution(const SystemProblem& sys, const Vec& x0, double h_out,
                                           double t_end);

struct SplitSignReport {
    std::size_t samples = 0;
    double max_sign_violation = 0.0;
    double max_residual = 0.0;
    bool pass = false;
};

/// Random points in the configured box; checks each component's signs and
/// that the split reconstructs F.
SplitSignReport validate_splits(const SystemProblem& sys, std::size_t samples = 10'000,
                                std::uint64_t seed = 12345);

/// Jacobian of the explicit map at an equilibrium for given phi_i:
///   I + diag(phi_i / (1 - phi_i beta_i f_i-)) grad F.
Mat step_jacobian_at_equilibrium(const SystemProblem& sys, const std::vector<double>& beta,
                                 const Vec& x_star, const Vec& phi);

/// Spectral radius of the step Jacobian after removing one unit eigenvalue
/// for every zero eigenvalue of grad F (directions along a continuum of
/// equilibria).
double transverse_spectral_radius(const SystemProblem& sys, const std::vector<double>& beta,
                                  const Vec& x_star, const Vec& phi);

/// True when every non-neutral eigenvalue of grad F(x*) has negative real part.
bool equilibrium_is_stable(const SystemProblem& sys, const Vec& x_star);

struct ThresholdReport {
    Vec x_star;
    double phi_threshold = std::numeric_limits<double>::infinity();  // common phi_i bound
    std::vector<double> component_thresholds;  // phi_i bound with the others at 1e-6
    bool continuous_stable = false;
};

/// Largest common phi for which the transverse spectral radius stays below 1
/// (scan on a log grid, bisection on the first crossing).
ThresholdReport stability_thresholds(const SystemProblem& sys, const std::vector<double>& beta,
                                     const Vec& x_star);

struct LotkaVolterraParams {
    double a = 1.0, b = 1.0, c = 1.0, e = 1.0;
};

struct SirsParams {
    double beta = 0.3, gamma = 0.1, mu = 0.05, N = 1.0;
};

/// x' = a x - b x y, y' = -c y + e x y in product form.
SystemProblem lotka_volterra(const LotkaVolterraParams& p);

/// S' = -beta S I / N + mu R, I' = beta S I / N - gamma I, R' = gamma I - mu R
/// in affine form.
SystemProblem sirs(const SirsParams& p);

/// Endemic equilibrium with S + I + R = total.
Vec sirs_endemic_equilibrium(const SirsParams& p, double total);

}  // namespace nsfd::system
