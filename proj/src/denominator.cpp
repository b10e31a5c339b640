#include "nsfd/denominator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "nsfd/errors.hpp"
#include "nsfd/numerics.hpp"

namespace nsfd::denominator {

ScalarFn lambda_from_scheme(const ScalarProblem& problem, const Representation& rep, double beta) {
    return [df = problem.df, fm = rep.f_minus, beta](double y) { return -df(y) + 2.0 * beta * fm(y); };
}

double phim(double x) {
    if (std::abs(x) < 1e-5) {
        return 1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0;
    }
    return -std::expm1(-x) / x;
}

namespace {

double phi_raw(const DenominatorSpec& spec, double h, double y) {
    switch (spec.kind) {
        case DenominatorKind::eq17: return h * phim(h * spec.lambda_fn(y));
        case DenominatorKind::constant_rate: return h * phim(h * spec.rate);
        case DenominatorKind::custom: return spec.custom_fn(h, y);
    }
    return NAN;
}

std::string fmt_num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

double phi(const DenominatorSpec& spec, double h, double y) {
    if (!(h > 0.0)) {
        throw NonPositiveStep("h = " + fmt_num(h));
    }
    return phi_raw(spec, h, y);
}

DenominatorSpec eq17(ScalarFn lambda, std::string description) {
    DenominatorSpec s;
    s.kind = DenominatorKind::eq17;
    s.lambda_fn = std::move(lambda);
    s.description = std::move(description);
    return s;
}

DenominatorSpec eq17_for(const ScalarProblem& problem, const Representation& rep, double beta,
                         std::string description) {
    return eq17(lambda_from_scheme(problem, rep, beta), std::move(description));
}

DenominatorSpec constant_rate(double rate, std::string description) {
    DenominatorSpec s;
    s.kind = DenominatorKind::constant_rate;
    s.rate = rate;
    s.description = std::move(description);
    return s;
}

DenominatorSpec custom(std::function<double(double, double)> fn, std::string description) {
    DenominatorSpec s;
    s.kind = DenominatorKind::custom;
    s.custom_fn = std::move(fn);
    s.description = std::move(description);
    return s;
}

double curvature_at_zero(const DenominatorSpec& spec, double y, double h0) {
    const auto d2 = [&](double h) { return (phi(spec, 2 * h, y) - 2 * phi(spec, h, y)) / (h * h); };
    return 2.0 * d2(h0 / 2) - d2(h0);
}

namespace {

constexpr std::size_t kH1Samples = 200;
constexpr std::size_t kH3Samples = 100;

std::vector<double> audit_points(const ScalarProblem& p, std::size_t n) {
    std::vector<double> extra;
    for (const auto& eq : p.equilibria) {
        extra.push_back(eq.y_star);
    }
    return numerics::sample_points(p.domain_hint, n, extra);
}

/// Time scale of the local dynamics, used to keep h * lambda small in the
/// small-step probes.
double local_scale(const ScalarProblem& p, const Representation& rep, const SchemeConfig& cfg, double y) {
    return 1.0 / std::max(1.0, std::abs(p.df(y) - 2.0 * cfg.beta() * rep.f_minus(y)));
}

ConditionResult check_h1(const ScalarProblem& p, const Representation& rep, const SchemeConfig& cfg) {
    const auto& spec = cfg.denominator();
    static const std::vector<double> steps{1e-4, 1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0};
    for (double y : audit_points(p, kH1Samples)) {
        for (double h : steps) {
            const double v = phi(spec, h, y);
            if (!(v > 0.0)) {
                return {false, false, "phi(" + fmt_num(h) + ", " + fmt_num(y) + ") = " + fmt_num(v)};
            }
        }
        // |phi/h - 1| / h must stay bounded as h shrinks: it tends to
        // |phi''(0)|/2 when phi = h + O(h^2) and grows like 1/h otherwise.
        double prev = -1.0;
        const double scale = local_scale(p, rep, cfg, y);
        for (double h : {1e-2 * scale, 1e-3 * scale, 1e-4 * scale}) {
            const double c = std::abs(phi(spec, h, y) / h - 1.0) / h;
            if (!std::isfinite(c) || (prev >= 0.0 && c > 1.5 * prev + 1e-6)) {
                return {false, false,
                        "phi/h - 1 is not O(h) at y = " + fmt_num(y) + " (C(" + fmt_num(h) +
                            ") = " + fmt_num(c) + ", previous " + fmt_num(prev) + ")"};
            }
            prev = c;
        }
    }
    return {true, false, "phi > 0 and phi = h + O(h^2) on all samples"};
}

ConditionResult check_h2(const ScalarProblem& p, const Representation& rep, const SchemeConfig& cfg) {
    bool any_binding = false;
    std::ostringstream notes;
    for (const auto& eq : p.equilibria) {
        if (eq.classification != Stability::stable) {
            continue;
        }
        const double den = 2.0 * cfg.beta() * rep.f_minus(eq.y_star) - eq.derivative_at;
        if (den <= 0.0) {
            notes << "y*=" << fmt_num(eq.y_star) << ": vacuous (2 beta f- - f' = " << fmt_num(den)
                  << " <= 0); ";
            continue;
        }
        any_binding = true;
        for (double h : kH2Steps) {
            const double v = phi(cfg.denominator(), h, eq.y_star);
            if (!(v < 2.0 / den)) {
                return {false, false,
                        "phi(" + fmt_num(h) + ", " + fmt_num(eq.y_star) + ") = " + fmt_num(v) +
                            " >= 2/(2 beta f- - f') = " + fmt_num(2.0 / den)};
            }
        }
        notes << "y*=" << fmt_num(eq.y_star) << ": phi < " << fmt_num(2.0 / den) << "; ";
    }
    std::string w = notes.str();
    if (w.empty()) {
        w = "no stable equilibria";
    } else {
        w.resize(w.size() - 2);
    }
    return {true, !any_binding, w};
}

ConditionResult check_h3(const ScalarProblem& p, const Representation& rep, const SchemeConfig& cfg) {
    double worst = 0.0;
    double worst_y = 0.0;
    double worst_est = 0.0;
    double worst_target = 0.0;
    for (double y : numerics::sample_points(p.domain_hint, kH3Samples - 1)) {
        const double target = p.df(y) - 2.0 * cfg.beta() * rep.f_minus(y);
        const double est = curvature_at_zero(cfg.denominator(), y, 1e-3 * local_scale(p, rep, cfg, y));
        const double rel = std::abs(est - target) / std::max(1.0, std::abs(target));
        if (rel > worst || std::isnan(rel)) {
            worst = std::isnan(rel) ? INFINITY : rel;
            worst_y = y;
            worst_est = est;
            worst_target = target;
        }
    }
    std::string w = "worst y = " + fmt_num(worst_y) + ": phi''(0) = " + fmt_num(worst_est) +
                    ", f' - 2 beta f- = " + fmt_num(worst_target) + " (rel " + fmt_num(worst) + ")";
    return {worst <= kH3RelTol, false, w};
}

}  // namespace

HReport check_H_conditions(const ScalarProblem& problem, const Representation& rep,
                           const SchemeConfig& config) {
    HReport r;
    r.h1 = check_h1(problem, rep, config);
    r.h2 = check_h2(problem, rep, config);
    r.h3 = check_h3(problem, rep, config);
    const bool h4 = config.weights_valid();
    r.h4 = {h4, false,
            "alpha = " + fmt_num(config.alpha()) + ", beta = " + fmt_num(config.beta()) +
                (h4 ? "" : " (need alpha + beta = 1, alpha <= 0, beta >= 0)")};
    return r;
}

}  // namespace nsfd::denominator
