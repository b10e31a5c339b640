#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "nsfd/errors.hpp"
#include "nsfd/experiments.hpp"
#include "nsfd/registry.hpp"

namespace ex = nsfd::experiments;

namespace {

struct Options {
    std::optional<std::string> problem;
    std::optional<std::string> scheme;
    std::optional<std::string> model;
    std::optional<std::string> params;
    std::optional<std::string> x0;
    std::optional<std::string> h_list;
    std::optional<double> y0;
    std::optional<double> h;
    std::optional<double> t_end;
    std::optional<double> beta;
    std::optional<std::size_t> pairs;
    std::optional<std::size_t> steps;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string out_dir = ".";
};

std::string require(const std::optional<std::string>& v, const char* flag) {
    if (!v) {
        throw CLI::ValidationError(flag, "required for this command");
    }
    return *v;
}

nsfd::registry::SchemeEntry selected_scheme(const Options& o) {
    auto entry = nsfd::registry::scheme(require(o.problem, "--problem"), require(o.scheme, "--scheme"));
    return o.beta ? ex::with_beta(entry, *o.beta) : entry;
}

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find(',', start);
        const auto item = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
        if (!item.empty()) {
            out.push_back(item);
        }
        if (end == std::string::npos) {
            break;
        }
        start = end + 1;
    }
    return out;
}

int cmd_split(const Options& o) {
    ex::emit(o.out, ex::split_report(require(o.problem, "--problem")));
    return 0;
}

int cmd_check(const Options& o) {
    const auto r = ex::check_report(selected_scheme(o));
    std::cout << r.text;
    if (o.out.empty()) {
        std::cout << '\n' << r.csv;
    } else {
        ex::emit(o.out, r.csv);
    }
    return r.pass ? 0 : 1;
}

int cmd_run(const Options& o) {
    ex::emit(o.out, ex::run_csv(selected_scheme(o), o.y0.value_or(nsfd::registry::kDefaultY0), o.h.value_or(0.1),
                                o.t_end.value_or(1.0)));
    return 0;
}

int cmd_run_sys(const Options& o) {
    const auto model = require(o.model, "--model");
    const auto sys = ex::make_system(model, ex::parse_params(o.params.value_or("")));
    nsfd::system::Vec x0 = ex::default_x0(model);
    if (o.x0) {
        const auto v = ex::parse_list(*o.x0);
        x0 = Eigen::Map<const nsfd::system::Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
    }
    const auto scheme = ex::parse_system_scheme(o.scheme.value_or("second-order"));
    ex::emit(o.out, ex::run_sys_csv(sys, scheme, x0, o.h.value_or(0.1), o.t_end.value_or(10.0)));
    return 0;
}

int cmd_rates(const Options& o) {
    const auto entry = selected_scheme(o);
    const auto h_list = ex::parse_list(o.h_list.value_or("0.1,0.01,0.001"));
    const auto table = nsfd::analysis::convergence_rates(nsfd::registry::problem(entry.problem), entry.step, h_list,
                                                         o.t_end.value_or(1.0), o.y0.value_or(nsfd::registry::kDefaultY0));
    ex::emit(o.out, ex::rates_csv(table));
    std::cerr << fmt::format("fitted order: {}\n", table.all_exact() ? "exact" : ex::fmt6(table.fitted_order()));
    return 0;
}

int cmd_audit(const Options& o) {
    ex::AuditOptions a;
    if (o.problem) {
        a.problems = split_names(*o.problem);
    } else {
        a.problems = nsfd::registry::scalar_problem_names();
        for (const auto& m : nsfd::registry::system_model_names()) {
            a.problems.push_back(m);
        }
    }
    a.scheme = o.scheme;
    a.beta = o.beta;
    if (o.pairs) a.pairs = *o.pairs;
    if (o.steps) a.steps = *o.steps;
    if (o.seed) a.seed = *o.seed;
    const auto s = ex::all_audits(a);
    ex::emit(o.out, s.report);
    return s.pass() ? 0 : 1;
}

int cmd_errata(const Options& o) {
    ex::emit(o.out, ex::errata_report());
    return 0;
}

int cmd_table2(const Options& o) {
    ex::emit(o.out, ex::table2_csv(o.h_list ? ex::parse_list(*o.h_list) : ex::kTable2Steps));
    return 0;
}

int cmd_figures(const Options& o) {
    const auto figs = ex::figures_csv();
    const std::filesystem::path dir(o.out_dir);
    std::filesystem::create_directories(dir);
    ex::emit((dir / "fig1.csv").string(), figs.fig1);
    ex::emit((dir / "fig2.csv").string(), figs.fig2);
    std::cerr << fmt::format("wrote {} and {}\n", (dir / "fig1.csv").string(), (dir / "fig2.csv").string());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Positivity-preserving, elementary-stable second-order NSFD schemes"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help and exit");
    app.set_config("--config", "", "key=value file; command-line flags take precedence");

    Options o;
    app.add_option("--problem", o.problem, "logistic|cubic|sine|monod|powerlaw (audit: comma-separated, also lv|sirs)");
    app.add_option("--scheme", o.scheme, "scheme label (run-sys: second-order|plain|euler)");
    app.add_option("--model", o.model, "lv|sirs");
    app.add_option("--params", o.params, "model parameters k=v,...");
    app.add_option("--x0", o.x0, "comma-separated initial state");
    app.add_option("--y0", o.y0, "initial value");
    app.add_option("--h", o.h, "step size")->check(CLI::PositiveNumber);
    app.add_option("--t-end", o.t_end, "final time")->check(CLI::PositiveNumber);
    app.add_option("--h-list", o.h_list, "comma-separated step sizes, decreasing");
    app.add_option("--beta", o.beta, "override the non-local weight (alpha = 1 - beta)");
    app.add_option("--pairs", o.pairs, "random (y0, h) pairs for positivity audits");
    app.add_option("--steps", o.steps, "steps per positivity run");
    app.add_option("--seed", o.seed, "seed for randomized audits");
    app.add_option("--out", o.out, "output file (default stdout)");
    app.add_option("--out-dir", o.out_dir, "directory for figure data");

    struct Command {
        const char* name;
        const char* help;
        int (*fn)(const Options&);
    };
    const Command commands[] = {
        {"split", "sign report of the representations of a problem", cmd_split},
        {"check", "H1-H4 report for a scheme (text and CSV)", cmd_check},
        {"run", "integrate a scalar problem (CSV t,y,y_exact,abs_error)", cmd_run},
        {"run-sys", "integrate a system model (CSV t,x_1..x_dim)", cmd_run_sys},
        {"rates", "error and observed order table", cmd_rates},
        {"audit", "check every claimed property; nonzero exit on failure", cmd_audit},
        {"errata", "published vs derived denominators with measured orders", cmd_errata},
        {"table2", "logistic error/rate table for three schemes", cmd_table2},
        {"figures", "trajectory data for the h = 1.25 comparison", cmd_figures},
    };
    for (const auto& c : commands) {
        app.add_subcommand(c.name, c.help)->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        for (const auto& c : commands) {
            if (app.got_subcommand(c.name)) {
                return c.fn(o);
            }
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
