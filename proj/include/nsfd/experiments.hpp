#pragma once

// Report builders behind the command-line driver. Each returns the text or
// CSV it would print so that tests can inspect the exact bytes.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nsfd/analysis.hpp"
#include "nsfd/registry.hpp"
#include "nsfd/system_integrator.hpp"

namespace nsfd::experiments {

/// Six significant digits, '.' separator regardless of locale.
std::string fmt6(double x);
/// Shortest representation that round-trips.
std::string fmt_full(double x);

/// Comma-separated reals. Throws std::invalid_argument on malformed input.
std::vector<double> parse_list(const std::string& text);
/// "k=v,k=v". Throws std::invalid_argument on malformed input.
std::map<std::string, double> parse_params(const std::string& text);

/// Replaces the weights of an NSFD entry by (1 - beta, beta) without
/// validation. Entries with a curvature-matched denominator get it rebuilt
/// for the new beta. Throws std::invalid_argument for entries without a
/// representation.
registry::SchemeEntry with_beta(const registry::SchemeEntry& entry, double beta);

std::string split_report(const std::string& problem_name);

struct CheckOutput {
    std::string text;
    std::string csv;  // condition,pass,vacuous,witness
    bool pass = false;
};
CheckOutput check_report(const registry::SchemeEntry& entry);

/// t,y,y_exact,abs_error; the last two are empty without an exact solution.
std::string run_csv(const registry::SchemeEntry& entry, double y0, double h, double t_end);

/// lv (a, b, c, e) or sirs (beta, gamma, mu, N). Unknown keys throw
/// std::invalid_argument; unknown models throw UnknownName.
system::SystemProblem make_system(const std::string& model, const std::map<std::string, double>& params);
system::Vec default_x0(const std::string& model);

enum class SystemScheme { second_order, plain, euler };
SystemScheme parse_system_scheme(const std::string& name);
system::SystemStep make_system_step(const system::SystemProblem& sys, SystemScheme scheme);

/// t,x_1..x_dim.
std::string run_sys_csv(const system::SystemProblem& sys, SystemScheme scheme, const system::Vec& x0, double h,
                        double t_end);

/// h,error,rate with six significant digits.
std::string rates_csv(const analysis::RateTable& table);

inline const std::vector<double> kTable2Steps{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};

/// h,snsfd1_error,snsfd1_rate,snsfd2_error,snsfd2_rate,wood_error,wood_rate
std::string table2_csv(const std::vector<double>& h_list = kTable2Steps);

inline constexpr double kFigureStep = 1.25;
inline constexpr int kFigureSteps = 40;

struct FigureData {
    std::string fig1;  // t,euler,rk2,snsfd1
    std::string fig2;  // t,snsfd1,wood
};
FigureData figures_csv();

struct AuditOptions {
    std::vector<std::string> problems;  // scalar problems and/or system models
    std::optional<std::string> scheme;  // restrict to one label
    std::optional<double> beta;         // weight override
    std::size_t pairs = 1000;
    std::size_t steps = 10'000;
    std::uint64_t seed = 20240611;
    std::vector<double> h_samples{0.1, 1.25, 10.0, 100.0};
    std::size_t scan_points = analysis::kFixedPointScan;
};

struct AuditSummary {
    std::string report;
    std::size_t audited = 0;
    std::size_t failures = 0;
    [[nodiscard]] bool pass() const { return failures == 0; }
};

/// Checks every claimed property of every selected scheme. An empty
/// selection passes with a warning line in the report.
AuditSummary all_audits(const AuditOptions& options);

/// Published denominators against the ones derived from the curvature
/// condition, with measured orders for both.
std::string errata_report();

/// Writes `content` to `path`, or to stdout when the path is empty or "-".
void emit(const std::string& path, const std::string& content);

}  // namespace nsfd::experiments
