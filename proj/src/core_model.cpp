#include "nsfd/core_model.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "nsfd/errors.hpp"
#include "nsfd/numerics.hpp"

namespace nsfd {

const char* to_string(Stability s) {
    switch (s) {
        case Stability::stable: return "stable";
        case Stability::unstable: return "unstable";
        case Stability::non_hyperbolic: return "non_hyperbolic";
    }
    return "?";
}

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::manual: return "manual";
        case Provenance::auto_lemma1: return "auto_lemma1";
        case Provenance::auto_theorem1: return "auto_theorem1";
    }
    return "?";
}

const char* to_string(DenominatorKind k) {
    switch (k) {
        case DenominatorKind::eq17: return "eq17";
        case DenominatorKind::constant_rate: return "constant_rate";
        case DenominatorKind::custom: return "custom";
    }
    return "?";
}

bool weights_satisfy_h4(double alpha, double beta) {
    return alpha + beta == 1.0 && alpha <= 0.0 && beta >= 0.0;
}

SchemeConfig::SchemeConfig(double alpha, double beta, DenominatorSpec denominator, std::string label)
    : SchemeConfig(Unchecked{}, alpha, beta, std::move(denominator), std::move(label)) {
    if (!weights_valid()) {
        std::ostringstream os;
        os << "alpha=" << alpha << ", beta=" << beta
           << " violate alpha + beta = 1, alpha <= 0, beta >= 0";
        throw InvalidWeights(os.str());
    }
}

SchemeConfig::SchemeConfig(Unchecked, double alpha, double beta, DenominatorSpec denominator,
                           std::string label)
    : alpha_(alpha), beta_(beta), denominator_(std::move(denominator)), label_(std::move(label)) {}

SchemeConfig SchemeConfig::unchecked(double alpha, double beta, DenominatorSpec denominator,
                                     std::string label) {
    return SchemeConfig(Unchecked{}, alpha, beta, std::move(denominator), std::move(label));
}

SchemeConfig SchemeConfig::from_beta(double beta, DenominatorSpec denominator, std::string label) {
    return SchemeConfig(1.0 - beta, beta, std::move(denominator), std::move(label));
}

bool SchemeConfig::weights_valid() const { return weights_satisfy_h4(alpha_, beta_); }

Stability classify_derivative(double derivative_at) {
    if (derivative_at < -kTolHyperbolic) {
        return Stability::stable;
    }
    if (derivative_at > kTolHyperbolic) {
        return Stability::unstable;
    }
    return Stability::non_hyperbolic;
}

std::vector<Equilibrium> classify_equilibria(const ScalarProblem& problem) {
    std::vector<Equilibrium> out;
    for (double root : numerics::scan_roots(problem.f, problem.domain_hint)) {
        const double d = problem.df(root);
        out.push_back({root, d, classify_derivative(d)});
    }
    return out;
}

namespace {

constexpr std::size_t kDerivativeSamples = 1'000;
constexpr double kDerivativeEps = 1e-6;

void check_derivative(const ScalarProblem& p) {
    for (double y : numerics::uniform_grid(p.domain_hint, kDerivativeSamples)) {
        const double analytic = p.df(y);
        const double fd = (p.f(y + kDerivativeEps) - p.f(y - kDerivativeEps)) / (2 * kDerivativeEps);
        if (!(std::abs(analytic - fd) <= 1e-6 * (1.0 + std::abs(analytic)))) {
            std::ostringstream os;
            os << p.name << ": df(" << y << ") = " << analytic << " but central difference gives "
               << fd;
            throw DerivativeMismatch(os.str());
        }
    }
}

}  // namespace

ScalarProblem register_problem(ScalarProblem spec, RegisterOptions options) {
    if (!spec.f || !spec.df) {
        throw std::invalid_argument("register_problem: f and df must be callable");
    }
    if (!(spec.domain_hint.hi > spec.domain_hint.lo)) {
        throw std::invalid_argument("register_problem: empty domain_hint for " + spec.name);
    }
    const double f0 = spec.f(0.0);
    if ((spec.f0_nonneg || options.require_positivity) && f0 < 0.0) {
        std::ostringstream os;
        os << spec.name << ": f(0) = " << f0 << " < 0";
        throw NegativeAtZero(os.str());
    }
    check_derivative(spec);

    if (spec.equilibria.empty() && options.compute_equilibria) {
        spec.equilibria = classify_equilibria(spec);
    }
    for (const auto& eq : spec.equilibria) {
        if (!(std::abs(spec.f(eq.y_star)) <= 1e-10 * (1.0 + std::abs(eq.y_star)))) {
            std::ostringstream os;
            os << spec.name << ": listed equilibrium " << eq.y_star << " has f = " << spec.f(eq.y_star);
            throw std::invalid_argument(os.str());
        }
    }
    return spec;
}

}  // namespace nsfd
