#include "nsfd/experiments.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "nsfd/denominator.hpp"
#include "nsfd/errors.hpp"
#include "nsfd/splitting.hpp"

namespace nsfd::experiments {

std::string fmt6(double x) { return fmt::format("{:.6g}", x); }

std::string fmt_full(double x) { return fmt::format("{}", x); }

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& token) {
    const auto t = trim(token);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + t + "'");
    }
    if (used != t.size()) {
        throw std::invalid_argument("not a number: '" + t + "'");
    }
    return v;
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(item);
    }
    return out;
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split_commas(text)) {
        out.push_back(parse_real(item));
    }
    if (out.empty()) {
        throw std::invalid_argument("empty list");
    }
    return out;
}

std::map<std::string, double> parse_params(const std::string& text) {
    std::map<std::string, double> out;
    if (trim(text).empty()) {
        return out;
    }
    for (const auto& item : split_commas(text)) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("expected key=value, got '" + item + "'");
        }
        out[trim(item.substr(0, eq))] = parse_real(item.substr(eq + 1));
    }
    return out;
}

registry::SchemeEntry with_beta(const registry::SchemeEntry& entry, double beta) {
    if (!entry.rep || !entry.config) {
        throw std::invalid_argument("scheme '" + entry.label + "' is not a weighted NSFD scheme");
    }
    const auto& problem = registry::problem(entry.problem);
    auto den = entry.eq17_derived ? denominator::eq17_for(problem, *entry.rep, beta, entry.config->denominator().description)
                                  : entry.config->denominator();
    auto out = entry;
    out.config = SchemeConfig::unchecked(1.0 - beta, beta, den, entry.label);
    out.claims.h_conditions = true;
    if (out.config->weights_valid()) {
        out.step = integrator::make_nsfd_map(*out.rep, *out.config, entry.step.order_claimed);
    } else {
        const std::string label = entry.label;
        out.step.update = [label, beta](double, double) -> double {
            throw InvalidWeights(fmt::format("{}: beta = {} violates alpha + beta = 1, alpha <= 0, beta >= 0",
                                             label, beta));
        };
    }
    return out;
}

std::string split_report(const std::string& problem_name) {
    const auto& p = registry::problem(problem_name);
    std::string out = fmt::format("problem: {}\ndomain: [{}, {}]\n", p.name, fmt6(p.domain_hint.lo),
                                  fmt6(p.domain_hint.hi));
    for (const auto& eq : p.equilibria) {
        out += fmt::format("equilibrium: y* = {}  f'(y*) = {}  {}\n", fmt6(eq.y_star), fmt6(eq.derivative_at),
                           to_string(eq.classification));
    }
    const auto zeros = splitting::find_zeros(p);
    if (!zeros.empty()) {
        const auto b = splitting::compute_bounds(p, zeros);
        out += fmt::format("bounds: l = {}  L = {}  M = {}  tail = {}\n", fmt6(b.l), fmt6(b.L), fmt6(b.M),
                           splitting::to_string(b.tail_sign));
    }

    const auto report_rep = [&](const std::string& name, const Representation& rep) {
        const auto r = splitting::validate_representation(p, rep);
        out += fmt::format("{} [{}]: {}\n", name, to_string(rep.provenance), rep.description);
        out += fmt::format("  samples {}  max(-f+) {} at y = {}  max(f-) {} at y = {}  residual {} at y = {}  {}\n",
                           r.samples, fmt6(r.max_plus_violation), fmt6(r.worst_plus_y), fmt6(r.max_minus_violation),
                           fmt6(r.worst_minus_y), fmt6(r.max_residual), fmt6(r.worst_residual_y),
                           r.pass ? "PASS" : "FAIL");
    };
    report_rep("derived", splitting::theorem1_split(p));
    std::set<std::string> seen;
    for (const auto& e : registry::schemes(problem_name)) {
        if (e.rep && seen.insert(e.rep->description).second) {
            report_rep(e.label, *e.rep);
        }
    }
    return out;
}

CheckOutput check_report(const registry::SchemeEntry& entry) {
    if (!entry.rep || !entry.config) {
        throw std::invalid_argument("scheme '" + entry.label + "' is not a weighted NSFD scheme");
    }
    const auto& p = registry::problem(entry.problem);
    const auto r = denominator::check_H_conditions(p, *entry.rep, *entry.config);
    CheckOutput out;
    out.pass = r.all_pass();
    out.text = fmt::format("problem {}  scheme {}  alpha {}  beta {}  denominator: {}\n", p.name, entry.label,
                           fmt6(entry.config->alpha()), fmt6(entry.config->beta()),
                           entry.config->denominator().description);
    out.csv = "condition,pass,vacuous,witness\n";
    const std::pair<const char*, const denominator::ConditionResult*> rows[] = {
        {"H1", &r.h1}, {"H2", &r.h2}, {"H3", &r.h3}, {"H4", &r.h4}};
    for (const auto& [name, c] : rows) {
        out.text += fmt::format("{}: {}{}{}\n", name, c->pass ? "PASS" : "FAIL", c->vacuous ? " (vacuous)" : "",
                                c->witness.empty() ? "" : "  " + c->witness);
        std::string witness = c->witness;
        std::replace(witness.begin(), witness.end(), '"', '\'');
        out.csv += fmt::format("{},{},{},\"{}\"\n", name, c->pass ? 1 : 0, c->vacuous ? 1 : 0, witness);
    }
    out.text += fmt::format("overall: {}\n", out.pass ? "PASS" : "FAIL");
    return out;
}

std::string run_csv(const registry::SchemeEntry& entry, double y0, double h, double t_end) {
    const auto& p = registry::problem(entry.problem);
    const auto traj = integrator::integrate(entry.step, y0, h, t_end, p.name);
    std::string out = "t,y,y_exact,abs_error\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t = traj.times[i];
        const double y = traj.states[i];
        if (p.has_exact()) {
            const double ye = p.exact_solution(t, y0);
            out += fmt::format("{},{},{},{}\n", t, y, ye, std::abs(y - ye));
        } else {
            out += fmt::format("{},{},,\n", t, y);
        }
    }
    return out;
}

namespace {

double take(std::map<std::string, double>& params, const std::string& key, double fallback) {
    const auto it = params.find(key);
    if (it == params.end()) {
        return fallback;
    }
    const double v = it->second;
    params.erase(it);
    return v;
}

}  // namespace

system::SystemProblem make_system(const std::string& model, const std::map<std::string, double>& params) {
    auto rest = params;
    system::SystemProblem sys;
    if (model == "lv") {
        system::LotkaVolterraParams p;
        p.a = take(rest, "a", p.a);
        p.b = take(rest, "b", p.b);
        p.c = take(rest, "c", p.c);
        p.e = take(rest, "e", p.e);
        sys = system::lotka_volterra(p);
    } else if (model == "sirs") {
        system::SirsParams p;
        p.beta = take(rest, "beta", p.beta);
        p.gamma = take(rest, "gamma", p.gamma);
        p.mu = take(rest, "mu", p.mu);
        p.N = take(rest, "N", p.N);
        sys = system::sirs(p);
    } else {
        throw UnknownName("no system model named '" + model + "'");
    }
    if (!rest.empty()) {
        throw std::invalid_argument("unknown parameter '" + rest.begin()->first + "' for model " + model);
    }
    return sys;
}

system::Vec default_x0(const std::string& model) {
    if (model == "lv") {
        return system::Vec{{2.0, 0.5}};
    }
    if (model == "sirs") {
        return system::Vec{{0.9, 0.1, 0.0}};
    }
    throw UnknownName("no system model named '" + model + "'");
}

SystemScheme parse_system_scheme(const std::string& name) {
    if (name == "second-order") return SystemScheme::second_order;
    if (name == "plain") return SystemScheme::plain;
    if (name == "euler") return SystemScheme::euler;
    throw UnknownName("no system scheme named '" + name + "' (second-order, plain, euler)");
}

system::SystemStep make_system_step(const system::SystemProblem& sys, SystemScheme scheme) {
    const std::vector<double> beta(static_cast<std::size_t>(sys.dim), 1.0);
    switch (scheme) {
        case SystemScheme::euler:
            return [sys](const system::Vec& x, double h) { return system::system_euler_step(sys, x, h); };
        case SystemScheme::plain: {
            auto cfg = system::make_system_config(beta, system::plain_denominators(sys.dim), "plain");
            return [sys, cfg](const system::Vec& x, double h) { return system::system_nsfd_step(sys, cfg, x, h); };
        }
        case SystemScheme::second_order:
        default: {
            auto cfg = system::make_system_config(beta, system::second_order_denominators(sys, beta), "second-order");
            return [sys, cfg](const system::Vec& x, double h) { return system::system_nsfd_step(sys, cfg, x, h); };
        }
    }
}

std::string run_sys_csv(const system::SystemProblem& sys, SystemScheme scheme, const system::Vec& x0, double h,
                        double t_end) {
    if (x0.size() != sys.dim) {
        throw std::invalid_argument(fmt::format("{} needs {} initial values, got {}", sys.name, sys.dim, x0.size()));
    }
    const auto traj = system::integrate_system_with(sys, make_system_step(sys, scheme), sys.name, x0, h, t_end);
    std::string out = "t";
    for (int i = 1; i <= sys.dim; ++i) {
        out += fmt::format(",x_{}", i);
    }
    out += '\n';
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        out += fmt::format("{}", traj.times[k]);
        for (int i = 0; i < sys.dim; ++i) {
            out += fmt::format(",{}", traj.states[k][i]);
        }
        out += '\n';
    }
    return out;
}

std::string rates_csv(const analysis::RateTable& table) {
    std::string out = "h,error,rate\n";
    for (const auto& r : table.rows) {
        out += fmt::format("{},{},{}\n", fmt6(r.h), fmt6(r.error), r.rate ? fmt6(*r.rate) : "");
    }
    return out;
}

std::string table2_csv(const std::vector<double>& h_list) {
    const auto& p = registry::problem("logistic");
    std::vector<analysis::RateTable> tables;
    for (const char* label : {"snsfd1", "snsfd2", "wood"}) {
        tables.push_back(
            analysis::convergence_rates(p, registry::scheme("logistic", label).step, h_list, 1.0, registry::kDefaultY0));
    }
    std::string out = "h,snsfd1_error,snsfd1_rate,snsfd2_error,snsfd2_rate,wood_error,wood_rate\n";
    for (std::size_t i = 0; i < h_list.size(); ++i) {
        out += fmt6(h_list[i]);
        for (const auto& t : tables) {
            const auto& r = t.rows[i];
            out += fmt::format(",{},{}", fmt6(r.error), r.rate ? fmt6(*r.rate) : "");
        }
        out += '\n';
    }
    return out;
}

FigureData figures_csv() {
    const double t_end = kFigureStep * kFigureSteps;
    const auto run = [&](const char* label) {
        return integrator::integrate(registry::scheme("logistic", label).step, registry::kDefaultY0, kFigureStep,
                                     t_end, "logistic");
    };
    const auto euler = run("euler");
    const auto rk2 = run("rk2");
    const auto nsfd = run("snsfd1");
    const auto wood = run("wood");
    FigureData out;
    out.fig1 = "t,euler,rk2,snsfd1\n";
    out.fig2 = "t,snsfd1,wood\n";
    for (std::size_t i = 0; i < nsfd.size(); ++i) {
        out.fig1 += fmt::format("{},{},{},{}\n", nsfd.times[i], euler.states[i], rk2.states[i], nsfd.states[i]);
        out.fig2 += fmt::format("{},{},{}\n", nsfd.times[i], nsfd.states[i], wood.states[i]);
    }
    return out;
}

namespace {

bool is_system(const std::string& name) {
    const auto& names = registry::system_model_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

void audit_scalar(const registry::SchemeEntry& entry, const AuditOptions& opt, AuditSummary& s) {
    const auto& p = registry::problem(entry.problem);
    const auto line = [&](const std::string& what, bool pass, const std::string& detail) {
        s.report += fmt::format("{}/{} {}: {}  {}\n", entry.problem, entry.label, what, pass ? "PASS" : "FAIL", detail);
        if (!pass) {
            ++s.failures;
        }
    };
    ++s.audited;
    const bool runnable = !entry.config || entry.config->weights_valid() || !entry.step.requires_representation;

    if (entry.claims.h_conditions) {
        if (!entry.rep || !entry.config) {
            line("H1-H4", false, "no weighted representation to check");
        } else {
            const auto r = denominator::check_H_conditions(p, *entry.rep, *entry.config);
            std::string failed;
            for (const auto& [name, c] : {std::pair{"H1", r.h1}, {"H2", r.h2}, {"H3", r.h3}, {"H4", r.h4}}) {
                if (!c.pass) {
                    failed += fmt::format(" {} ({})", name, c.witness);
                }
            }
            line("H1-H4", r.all_pass(), failed.empty() ? "" : "failed:" + failed);
        }
    }
    if (entry.claims.positive) {
        if (!runnable) {
            line("positivity", false, "config rejected: invalid weights");
        } else {
            const auto r = analysis::random_positivity_audit(entry.step, opt.pairs, 0.0, 10.0, 100.0, opt.steps, opt.seed);
            line("positivity", r.pass,
                 fmt::format("runs {}  negative {}  non-finite {}  overflow {}  min {}", r.runs,
                             r.negative_iterates, r.non_finite_iterates, r.overflow_runs, fmt6(r.min_state)));
        }
    }
    if (entry.claims.elementary_stable) {
        if (!runnable) {
            line("elementary stability", false, "config rejected: invalid weights");
        } else {
            const auto r = (entry.rep && entry.config && entry.step.requires_representation)
                               ? analysis::elementary_stability_audit(p, *entry.rep, *entry.config, opt.h_samples,
                                                                      opt.scan_points)
                               : analysis::elementary_stability_audit(p, entry.step, opt.h_samples, opt.scan_points);
            std::string detail = fmt::format("checks {}  spurious {}", r.checks.size(), r.spurious.size());
            for (const auto& c : r.checks) {
                if (!c.consistent) {
                    detail += fmt::format("  [y* = {} h = {} J = {}]", fmt6(c.y_star), fmt6(c.h), fmt6(c.jacobian));
                }
            }
            if (!r.spurious.empty()) {
                const auto& sp = r.spurious.front();
                detail += fmt::format("  first spurious: h = {} y = {}", fmt6(sp.h), fmt6(sp.y));
            }
            line("elementary stability", r.pass, detail);
        }
    }
}

void audit_system(const std::string& model, const AuditOptions& opt, AuditSummary& s) {
    const auto line = [&](const std::string& label, const std::string& what, bool pass, const std::string& detail) {
        s.report += fmt::format("{}/{} {}: {}  {}\n", model, label, what, pass ? "PASS" : "FAIL", detail);
        if (!pass) {
            ++s.failures;
        }
    };
    const auto sys = make_system(model, {});
    const auto splits = system::validate_splits(sys);
    line("splits", "sign structure", splits.pass,
         fmt::format("samples {}  sign violation {}  residual {}", splits.samples, fmt6(splits.max_sign_violation),
                     fmt6(splits.max_residual)));
    for (auto scheme : {SystemScheme::second_order, SystemScheme::plain}) {
        const std::string label = scheme == SystemScheme::second_order ? "second-order" : "plain";
        if (opt.scheme && *opt.scheme != label) {
            continue;
        }
        ++s.audited;
        const auto r = analysis::random_system_positivity_audit(sys, make_system_step(sys, scheme), opt.pairs, 10.0,
                                                                100.0, opt.steps, opt.seed);
        line(label, "positivity", r.pass,
             fmt::format("runs {}  negative {}  non-finite {}  overflow {}  min {}", r.runs, r.negative_iterates,
                         r.non_finite_iterates, r.overflow_runs, fmt6(r.min_state)));
    }
    if (model == "sirs") {
        const system::SirsParams p;
        const std::vector<double> beta(3, 1.0);
        const auto x_star = system::sirs_endemic_equilibrium(p, p.N);
        const auto th = system::stability_thresholds(sys, beta, x_star);
        const double phi = std::isfinite(th.phi_threshold) ? 0.5 * th.phi_threshold : 1e3;
        const double rho = system::transverse_spectral_radius(sys, beta, x_star, system::Vec::Constant(3, phi));
        const auto step = make_system_step(sys, SystemScheme::second_order);
        double drift = 0.0;
        for (double h : opt.h_samples) {
            drift = std::max(drift, (step(x_star, h) - x_star).cwiseAbs().maxCoeff());
        }
        line("second-order", "endemic equilibrium", th.continuous_stable && rho < 1.0 && drift <= 1e-12,
             fmt::format("phi threshold {}  radius at half threshold {}  fixed-point drift {}", fmt6(th.phi_threshold),
                         fmt6(rho), fmt6(drift)));
    }
}

}  // namespace

AuditSummary all_audits(const AuditOptions& opt) {
    AuditSummary s;
    if (opt.problems.empty()) {
        s.report = "warning: empty selection, nothing audited\n";
        return s;
    }
    for (const auto& name : opt.problems) {
        if (is_system(name)) {
            if (opt.beta) {
                s.report += fmt::format("warning: --beta ignored for system model {}\n", name);
            }
            audit_system(name, opt, s);
            continue;
        }
        for (const auto& e : registry::schemes(name)) {
            if (opt.scheme && e.label != *opt.scheme) {
                continue;
            }
            if (opt.beta) {
                if (!e.rep || !e.config) {
                    continue;
                }
                audit_scalar(with_beta(e, *opt.beta), opt, s);
            } else {
                audit_scalar(e, opt, s);
            }
        }
    }
    if (s.audited == 0) {
        s.report += "warning: empty selection, nothing audited\n";
    }
    s.report += fmt::format("audited {}  failures {}  overall {}\n", s.audited, s.failures, s.pass() ? "PASS" : "FAIL");
    return s;
}

namespace {

const std::vector<double> kErrataSteps{1e-1, 1e-2, 1e-3};

std::string measured(const ScalarProblem& p, const integrator::StepMap& step) {
    const auto t = analysis::convergence_rates(p, step, kErrataSteps, 1.0, registry::kDefaultY0);
    if (t.all_exact()) {
        return "exact to machine precision";
    }
    std::string errs;
    for (const auto& r : t.rows) {
        errs += (errs.empty() ? "" : ", ") + fmt6(r.error);
    }
    return fmt::format("order {} (errors {})", fmt::format("{:.3f}", t.fitted_order()), errs);
}

integrator::StepMap eq17_map(const registry::SchemeEntry& entry, ScalarFn lambda, const std::string& desc) {
    auto cfg = SchemeConfig::from_beta(entry.config->beta(), denominator::eq17(std::move(lambda), desc), entry.label);
    return integrator::make_nsfd_map(*entry.rep, cfg);
}

}  // namespace

std::string errata_report() {
    std::string out;
    const auto section = [&](const std::string& title) { out += "\n== " + title + " ==\n"; };
    const auto row = [&](const std::string& name, const std::string& formula, const std::string& result) {
        out += fmt::format("  {:<22} {}\n  {:<22} -> {}\n", name, formula, "", result);
    };
    out += "Denominators: published vs derived from lambda(y) = -f'(y) + 2 beta f-(y),\n";
    out += "phi(h, y) = (1 - exp(-lambda h))/lambda. Orders fitted over h = 0.1, 0.01, 0.001, T = 1, y0 = 0.5.\n";

    {
        const auto& p = registry::problem("logistic");
        const auto s1 = registry::scheme("logistic", "snsfd1");
        section("logistic snsfd1 (f+ = 2y, f- = -y, beta = 1.25)");
        row("published", "(1 - exp((2 + 0.5y)h))/(2 + 0.5y)  [negative for every h > 0]", "not a valid denominator");
        row("published, sign-fixed", "(1 - exp(-(2 + 0.5y)h))/(2 + 0.5y)",
            measured(p, eq17_map(s1, [](double y) { return 2.0 + 0.5 * y; }, "lambda = 2 + 0.5y")));
        row("derived", "(exp((2 + 0.5y)h) - 1)/(2 + 0.5y)", measured(p, s1.step));

        const auto s2 = registry::scheme("logistic", "snsfd2");
        section("logistic snsfd2 (f+ = 2y + y^2, f- = -2y, beta = 1.25)");
        row("published", "(1 - exp(-(2 + 3y)h))/(2 + 3y)",
            measured(p, eq17_map(s2, [](double y) { return 2.0 + 3.0 * y; }, "lambda = 2 + 3y")));
        row("derived", "(exp((2 + 3y)h) - 1)/(2 + 3y)", measured(p, s2.step));

        section("logistic snsfd3 (f+ = 2y, f- = -y, beta = 1), listed as exact");
        row("published", "(1 - exp(-2h))/2", measured(p, registry::scheme("logistic", "snsfd3-printed").step));
        row("derived", "(exp(2h) - 1)/2", measured(p, registry::scheme("logistic", "snsfd3").step));

        section("logistic sign-switching scheme (beta = 0)");
        row("published", "1 - exp(-h)", measured(p, registry::scheme("logistic", "wood").step));
    }
    {
        const auto& p = registry::problem("cubic");
        section("cubic (f+ = y, f- = -y^2, beta = 1.5)");
        out += "  published f- = y^2 has the wrong sign; the scheme itself uses -y^2.\n";
        integrator::StepMap typo{"cubic-typo",
                                 [](double y, double h) {
                                     const double phi = -std::expm1(-h);
                                     return ((2.0 + phi) * y + phi * y * y * y) / (2.0 + 3.0 * phi * y * y);
                                 },
                                 false, integrator::ClaimedOrder::first};
        row("published update", "((2 + phi)y + phi y^3)/(2 + 3 phi y^2), phi = 1 - exp(-h)",
            measured(p, typo) + "  [inconsistent: the y coefficient should be 2 + 2 phi]");
        row("published phi", "1 - exp(-h) with ((2 + 2phi)y + phi y^3)/(2 + 3 phi y^2)",
            measured(p, registry::scheme("cubic", "nsfd-printed").step));
        row("derived", "exp(h) - 1", measured(p, registry::scheme("cubic", "nsfd").step));
        row("symmetric baseline", "(1 - exp(-2h))/2, claimed second order",
            measured(p, registry::scheme("cubic", "mickens").step));
    }
    {
        constexpr double mu = registry::kMonodMu;
        const auto& p = registry::problem("monod");
        const auto e = registry::scheme("monod", "nsfd");
        section(fmt::format("monod, mu = {} (f+ = (mu-1)y/(1+y), f- = -(mu+1)y/(1+y), beta = 1)", mu));
        out += "  published f- = +(mu+1)y/(1+y) has the wrong sign for this convention.\n";
        row("published R(y)", "((mu+1) + 4(mu+1)y + 3(mu+1)y^2)/(1+y)^2",
            measured(p, registry::scheme("monod", "nsfd-printed").step));
        row("published condition", "((mu+3) + 4(mu+1)y + 3(mu+1)y^2)/(1+y)^2",
            measured(p, eq17_map(e,
                                 [](double y) {
                                     return ((mu + 3.0) + 4.0 * (mu + 1.0) * y + 3.0 * (mu + 1.0) * y * y) /
                                            ((1.0 + y) * (1.0 + y));
                                 },
                                 "text condition")));
        row("derived", "-((mu-1) + (mu+1)y^2)/(1+y)^2", measured(p, e.step));
        row("constant-rate baseline", "(1 - exp(-(mu-1)h))/(mu-1)", measured(p, registry::scheme("monod", "mickens").step));
    }
    {
        const auto& p = registry::problem("sine");
        section("sine (f+ = sin(pi y) + pi y, f- = -pi, beta = 1)");
        row("published", "lambda(y) = pi cos(pi y) - 2 pi", measured(p, registry::scheme("sine", "nsfd-printed").step));
        row("derived", "lambda(y) = -pi cos(pi y) - 2 pi", measured(p, registry::scheme("sine", "nsfd").step));
        row("constant-rate baseline", "(1 - exp(-pi h))/pi", measured(p, registry::scheme("sine", "mickens").step));
    }
    {
        const auto [a, b, m] = registry::kPowerLaw;
        const auto& p = registry::problem("powerlaw");
        section(fmt::format("power law y' = a y - b y^m, a = {}, b = {}, m = {} (beta = 1)", a, b, m));
        row("published", "(1 - exp(-a h))/a", measured(p, registry::scheme("powerlaw", "nsfd-printed").step));
        row("derived", "(exp(a h) - 1)/a", measured(p, registry::scheme("powerlaw", "nsfd").step));
    }
    return out;
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    f << content;
    if (!f) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

}  // namespace nsfd::experiments
