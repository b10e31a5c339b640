#include "nsfd/registry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "nsfd/denominator.hpp"
#include "nsfd/errors.hpp"
#include "nsfd/splitting.hpp"

namespace nsfd::registry {

namespace {

constexpr double pi = std::numbers::pi;

ScalarProblem make_logistic() {
    ScalarProblem p;
    p.name = "logistic";
    p.f = [](double y) { return 2.0 * y - y * y; };
    p.df = [](double y) { return 2.0 - 2.0 * y; };
    p.domain_hint = {0.0, 10.0};
    p.f0_nonneg = true;
    p.exact_solution = [](double t, double y0) {
        if (y0 == 0.0) {
            return 0.0;
        }
        return 2.0 / (1.0 + (2.0 / y0 - 1.0) * std::exp(-2.0 * t));
    };
    return register_problem(p);
}

ScalarProblem make_cubic() {
    ScalarProblem p;
    p.name = "cubic";
    p.f = [](double y) { return y * (1.0 - y * y); };
    p.df = [](double y) { return 1.0 - 3.0 * y * y; };
    p.domain_hint = {0.0, 10.0};
    p.f0_nonneg = true;
    p.exact_solution = [](double t, double y0) {
        return y0 / std::sqrt(y0 * y0 + (1.0 - y0 * y0) * std::exp(-2.0 * t));
    };
    return register_problem(p);
}

ScalarProblem make_sine() {
    ScalarProblem p;
    p.name = "sine";
    p.f = [](double y) { return std::sin(pi * y); };
    p.df = [](double y) { return pi * std::cos(pi * y); };
    p.domain_hint = {0.0, 3.5};
    p.f0_nonneg = true;
    return register_problem(p);
}

ScalarProblem make_monod() {
    constexpr double mu = kMonodMu;
    ScalarProblem p;
    p.name = "monod";
    p.f = [](double y) { return ((mu - 1.0) * y - (mu + 1.0) * y * y) / (1.0 + y); };
    p.df = [](double y) {
        return ((mu - 1.0) - 2.0 * (mu + 1.0) * y - (mu + 1.0) * y * y) / ((1.0 + y) * (1.0 + y));
    };
    p.domain_hint = {0.0, 10.0};
    p.f0_nonneg = true;
    return register_problem(p);
}

ScalarProblem make_powerlaw() {
    const auto [a, b, m] = kPowerLaw;
    ScalarProblem p;
    p.name = "powerlaw";
    p.f = [a, b, m](double y) { return a * y - b * std::pow(y, m); };
    p.df = [a, b, m](double y) { return a - b * m * std::pow(y, m - 1); };
    p.domain_hint = {0.0, 10.0};
    p.f0_nonneg = true;
    // Bernoulli substitution u = y^(1-m).
    p.exact_solution = [a, b, m](double t, double y0) {
        if (y0 == 0.0) {
            return 0.0;
        }
        const double k = m - 1.0;
        const double u = b / a + (std::pow(y0, -k) - b / a) * std::exp(-k * a * t);
        return std::pow(u, -1.0 / k);
    };
    return register_problem(p);
}

const std::map<std::string, ScalarProblem>& problems() {
    static const std::map<std::string, ScalarProblem> table{
        {"logistic", make_logistic()}, {"cubic", make_cubic()},       {"sine", make_sine()},
        {"monod", make_monod()},       {"powerlaw", make_powerlaw()},
    };
    return table;
}

Representation manual(ScalarFn plus, ScalarFn minus, std::string description) {
    return {std::move(plus), std::move(minus), Provenance::manual, std::move(description)};
}

SchemeEntry nsfd_entry(const ScalarProblem& p, std::string label, const Representation& rep, double beta,
                       DenominatorSpec den, bool eq17_derived, Claims claims, std::string printed,
                       integrator::ClaimedOrder order) {
    auto cfg = SchemeConfig::from_beta(beta, std::move(den), label);
    SchemeEntry e;
    e.label = std::move(label);
    e.problem = p.name;
    e.step = integrator::make_nsfd_map(rep, cfg, order);
    e.rep = rep;
    e.config = cfg;
    e.eq17_derived = eq17_derived;
    e.claims = claims;
    e.printed_denominator = std::move(printed);
    return e;
}

SchemeEntry derived_entry(const ScalarProblem& p, std::string label, const Representation& rep, double beta,
                          std::string printed = {},
                          integrator::ClaimedOrder order = integrator::ClaimedOrder::second) {
    auto den = denominator::eq17_for(p, rep, beta, "derived: lambda = -f' + 2 beta f-");
    return nsfd_entry(p, std::move(label), rep, beta, std::move(den), true, {true, true, true},
                      std::move(printed), order);
}

SchemeEntry baseline(const ScalarProblem& p, std::string label, std::function<double(double, double)> fn,
                     Claims claims, integrator::ClaimedOrder order, std::string printed = {}) {
    SchemeEntry e;
    e.label = label;
    e.problem = p.name;
    e.step = {std::move(label), std::move(fn), false, order};
    e.claims = claims;
    e.printed_denominator = std::move(printed);
    return e;
}

void add_standard(std::vector<SchemeEntry>& out, const ScalarProblem& p) {
    using integrator::ClaimedOrder;
    out.push_back(baseline(p, "euler", [p](double y, double h) { return integrator::euler_step(p, y, h); },
                           {}, ClaimedOrder::first));
    out.push_back(baseline(p, "rk2", [p](double y, double h) { return integrator::rk2_step(p, y, h); }, {},
                           ClaimedOrder::second));
}

void add_auto(std::vector<SchemeEntry>& out, const ScalarProblem& p) {
    out.push_back(derived_entry(p, "auto", splitting::theorem1_split(p), 1.0));
}

std::vector<SchemeEntry> logistic_schemes(const ScalarProblem& p) {
    using integrator::ClaimedOrder;
    std::vector<SchemeEntry> out;
    const auto rep1 = manual([](double y) { return 2.0 * y; }, [](double y) { return -y; }, "f+ = 2y, f- = -y");
    const auto rep2 = manual([](double y) { return 2.0 * y + y * y; }, [](double y) { return -2.0 * y; },
                             "f+ = 2y + y^2, f- = -2y");
    out.push_back(derived_entry(p, "snsfd1", rep1, 1.25, "(1 - exp((2 + 0.5y)h))/(2 + 0.5y)"));
    out.push_back(derived_entry(p, "snsfd2", rep2, 1.25, "(1 - exp(-h(2 + 3y)))/(2 + 3y)"));
    out.push_back(derived_entry(p, "snsfd3", rep1, 1.0, "(1 - exp(-2h))/2", ClaimedOrder::exact));
    out.push_back(nsfd_entry(p, "snsfd3-printed", rep1, 1.0,
                             denominator::constant_rate(2.0, "(1 - exp(-2h))/2"), false, {true, true, false},
                             "(1 - exp(-2h))/2", ClaimedOrder::first));

    auto wood = baseline(p, "wood", integrator::wood_kojouharov_step, {true, true, false}, ClaimedOrder::first,
                         "1 - exp(-h)");
    // The sign-switching scheme seen as the weighted method with beta = 0.
    wood.rep = rep1;
    wood.config = SchemeConfig::unchecked(1.0, 0.0, denominator::constant_rate(1.0, "1 - exp(-h)"), "wood");
    out.push_back(wood);
    add_standard(out, p);
    return out;
}

std::vector<SchemeEntry> cubic_schemes(const ScalarProblem& p) {
    using integrator::ClaimedOrder;
    std::vector<SchemeEntry> out;
    const auto rep = manual([](double y) { return y; }, [](double y) { return -y * y; }, "f+ = y, f- = -y^2");
    out.push_back(derived_entry(p, "nsfd", rep, 1.5, "1 - exp(-h)"));
    out.push_back(nsfd_entry(p, "nsfd-printed", rep, 1.5, denominator::constant_rate(1.0, "1 - exp(-h)"), false,
                             {true, true, false}, "1 - exp(-h)", ClaimedOrder::first));
    out.push_back(baseline(p, "mickens", integrator::mickens_cubic_step, {true, true, false}, ClaimedOrder::first,
                           "(1 - exp(-2h))/2"));
    add_auto(out, p);
    add_standard(out, p);
    return out;
}

std::vector<SchemeEntry> sine_schemes(const ScalarProblem& p) {
    using integrator::ClaimedOrder;
    std::vector<SchemeEntry> out;
    const auto rep = manual([](double y) { return std::sin(pi * y) + pi * y; }, [](double) { return -pi; },
                            "f+ = sin(pi y) + pi y, f- = -pi");
    out.push_back(derived_entry(p, "nsfd", rep, 1.0, "lambda(y) = pi cos(pi y) - 2 pi"));
    auto printed = denominator::eq17([](double y) { return pi * std::cos(pi * y) - 2.0 * pi; },
                                     "printed lambda(y) = pi cos(pi y) - 2 pi");
    out.push_back(nsfd_entry(p, "nsfd-printed", rep, 1.0, printed, false, {true, true, false},
                             "lambda(y) = pi cos(pi y) - 2 pi", ClaimedOrder::first));
    out.push_back(baseline(p, "mickens", integrator::mickens_sine_step, {true, true, false}, ClaimedOrder::first,
                           "(1 - exp(-pi h))/pi"));
    add_auto(out, p);
    add_standard(out, p);
    return out;
}

std::vector<SchemeEntry> monod_schemes(const ScalarProblem& p) {
    using integrator::ClaimedOrder;
    constexpr double mu = kMonodMu;
    std::vector<SchemeEntry> out;
    const auto rep = manual([](double y) { return (mu - 1.0) * y / (1.0 + y); },
                            [](double y) { return -(mu + 1.0) * y / (1.0 + y); },
                            "f+ = (mu - 1)y/(1 + y), f- = -(mu + 1)y/(1 + y)");
    out.push_back(derived_entry(p, "nsfd", rep, 1.0,
                                "R(y) = ((mu+1) + 4(mu+1)y + 3(mu+1)y^2)/(1+y)^2"));
    auto printed = denominator::eq17(
        [](double y) {
            return ((mu + 1.0) + 4.0 * (mu + 1.0) * y + 3.0 * (mu + 1.0) * y * y) / ((1.0 + y) * (1.0 + y));
        },
        "printed lambda(y) = ((mu+1) + 4(mu+1)y + 3(mu+1)y^2)/(1+y)^2");
    out.push_back(nsfd_entry(p, "nsfd-printed", rep, 1.0, printed, false, {true, true, false},
                             "R(y) = ((mu+1) + 4(mu+1)y + 3(mu+1)y^2)/(1+y)^2", ClaimedOrder::first));
    auto mickens = baseline(
        p, "mickens", [](double y, double h) { return integrator::mickens_monod_step(y, h, mu); },
        {true, true, false}, ClaimedOrder::first, "(1 - exp(-R h))/R, R = mu - 1");
    mickens.rep = rep;
    mickens.config = SchemeConfig::from_beta(1.0, denominator::constant_rate(mu - 1.0, "(1 - exp(-R h))/R"),
                                             "mickens");
    out.push_back(mickens);
    add_auto(out, p);
    add_standard(out, p);
    return out;
}

std::vector<SchemeEntry> powerlaw_schemes(const ScalarProblem& p) {
    using integrator::ClaimedOrder;
    const auto params = kPowerLaw;
    const auto [a, b, m] = params;
    std::vector<SchemeEntry> out;
    const auto rep = manual([a, b, m](double y) { return a * y - b * (1.0 - 0.5 * m) * std::pow(y, m); },
                            [b, m](double y) { return -b * 0.5 * m * std::pow(y, m - 1); },
                            "f+ = a y - b(1 - m/2) y^m, f- = -b (m/2) y^(m-1)");
    auto derived = derived_entry(p, "nsfd", rep, 1.0, "(1 - exp(-a h))/a");
    derived.step.update = [params](double y, double h) { return integrator::powerlaw_nsfd_step(params, y, h); };
    out.push_back(derived);
    auto printed = nsfd_entry(p, "nsfd-printed", rep, 1.0, denominator::constant_rate(a, "(1 - exp(-a h))/a"),
                              false, {true, true, false}, "(1 - exp(-a h))/a", ClaimedOrder::first);
    printed.step.update = [params](double y, double h) {
        return integrator::powerlaw_nsfd_step(params, y, h, integrator::PowerLawDenominator::printed);
    };
    out.push_back(printed);
    add_auto(out, p);
    add_standard(out, p);
    return out;
}

}  // namespace

const std::vector<std::string>& scalar_problem_names() {
    static const std::vector<std::string> names{"logistic", "cubic", "sine", "monod", "powerlaw"};
    return names;
}

const std::vector<std::string>& system_model_names() {
    static const std::vector<std::string> names{"lv", "sirs"};
    return names;
}

const ScalarProblem& problem(const std::string& name) {
    const auto& table = problems();
    if (const auto it = table.find(name); it != table.end()) {
        return it->second;
    }
    const auto& sys = system_model_names();
    if (std::find(sys.begin(), sys.end(), name) != sys.end()) {
        throw UnknownName(name + " is a system model (use run-sys)");
    }
    throw UnknownName("no scalar problem named '" + name + "'");
}

std::vector<SchemeEntry> schemes(const std::string& problem_name) {
    const auto& p = problem(problem_name);
    if (problem_name == "logistic") return logistic_schemes(p);
    if (problem_name == "cubic") return cubic_schemes(p);
    if (problem_name == "sine") return sine_schemes(p);
    if (problem_name == "monod") return monod_schemes(p);
    return powerlaw_schemes(p);
}

SchemeEntry scheme(const std::string& problem_name, const std::string& label) {
    for (auto& e : schemes(problem_name)) {
        if (e.label == label) {
            return e;
        }
    }
    throw UnknownName("no scheme '" + label + "' for problem '" + problem_name + "'");
}

}  // namespace nsfd::registry
