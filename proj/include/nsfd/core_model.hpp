#pragma once

// Domain records shared by the whole library: scalar problems, their
// equilibria, splittings f = f+ + y f-, scheme weights and trajectories.
// Every record is immutable once built and safe to share between threads.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nsfd {

using ScalarFn = std::function<double(double)>;
using ExactSolutionFn = std::function<double(double t, double y0)>;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    [[nodiscard]] double width() const { return hi - lo; }
};

enum class Stability { stable, unstable, non_hyperbolic };

const char* to_string(Stability s);

/// Hyperbolicity threshold on |f'(y*)|.
inline constexpr double kTolHyperbolic = 1e-10;

struct Equilibrium {
    double y_star = 0.0;
    double derivative_at = 0.0;
    Stability classification = Stability::non_hyperbolic;
};

struct ScalarProblem {
    std::string name;
    ScalarFn f;
    ScalarFn df;
    Interval domain_hint;
    std::vector<Equilibrium> equilibria;
    ExactSolutionFn exact_solution;  // empty when no closed form is known
    bool f0_nonneg = false;

    [[nodiscard]] bool has_exact() const { return static_cast<bool>(exact_solution); }
};

enum class Provenance { manual, auto_lemma1, auto_theorem1 };

const char* to_string(Provenance p);

/// f(y) = f_plus(y) + y * f_minus(y) with f_plus >= 0 and f_minus <= 0 on y >= 0.
struct Representation {
    ScalarFn f_plus;
    ScalarFn f_minus;
    Provenance provenance = Provenance::manual;
    std::string description;
};

enum class DenominatorKind { eq17, constant_rate, custom };

const char* to_string(DenominatorKind k);

/// Denominator phi(h, y). eq17 evaluates (1 - exp(-h lambda(y))) / lambda(y),
/// constant_rate the same kernel with a fixed rate, custom an arbitrary phi.
struct DenominatorSpec {
    DenominatorKind kind = DenominatorKind::eq17;
    ScalarFn lambda_fn;
    double rate = 0.0;
    std::function<double(double h, double y)> custom_fn;
    std::string description;
};

/// Non-local weights (alpha, beta) and the denominator of an NSFD scheme.
/// The public constructor enforces alpha + beta = 1, alpha <= 0, beta >= 0.
class SchemeConfig {
public:
    SchemeConfig(double alpha, double beta, DenominatorSpec denominator, std::string label);

    /// Builds a config without validating the weights, for audits that must
    /// be able to see a broken scheme.
    static SchemeConfig unchecked(double alpha, double beta, DenominatorSpec denominator,
                                  std::string label);

    /// beta only; alpha = 1 - beta.
    static SchemeConfig from_beta(double beta, DenominatorSpec denominator, std::string label);

    [[nodiscard]] double alpha() const { return alpha_; }
    [[nodiscard]] double beta() const { return beta_; }
    [[nodiscard]] const DenominatorSpec& denominator() const { return denominator_; }
    [[nodiscard]] const std::string& label() const { return label_; }
    [[nodiscard]] bool weights_valid() const;

private:
    struct Unchecked {};
    SchemeConfig(Unchecked, double alpha, double beta, DenominatorSpec denominator,
                 std::string label);

    double alpha_;
    double beta_;
    DenominatorSpec denominator_;
    std::string label_;
};

[[nodiscard]] bool weights_satisfy_h4(double alpha, double beta);

struct Trajectory {
    std::vector<double> times;
    std::vector<double> states;
    std::string scheme_label;
    std::string problem_name;
    double h = 0.0;
    std::size_t positivity_violations = 0;

    [[nodiscard]] std::size_t size() const { return states.size(); }
    [[nodiscard]] double final_time() const { return times.empty() ? 0.0 : times.back(); }
    [[nodiscard]] double final_state() const { return states.empty() ? 0.0 : states.back(); }
};

struct RegisterOptions {
    /// Reject problems with f(0) < 0 even when f0_nonneg was not asserted.
    bool require_positivity = false;
    /// Fill in equilibria from a root scan of domain_hint when none are given.
    bool compute_equilibria = true;
};

/// Verifies the derivative against central differences, the f(0) >= 0 claim,
/// and fills in classified equilibria. Idempotent.
ScalarProblem register_problem(ScalarProblem spec, RegisterOptions options = {});

/// Roots of f on the domain hint, each classified by the sign of f'(y*).
/// Non-hyperbolic points are returned with Stability::non_hyperbolic.
std::vector<Equilibrium> classify_equilibria(const ScalarProblem& problem);

Stability classify_derivative(double derivative_at);

}  // namespace nsfd
