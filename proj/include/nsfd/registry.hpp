#pragma once

// Named problems and the schemes built for each of them. Problem names are
// the ones accepted on the command line.

#include <optional>
#include <string>
#include <vector>

#include "nsfd/core_model.hpp"
#include "nsfd/scalar_integrator.hpp"

namespace nsfd::registry {

/// Structural properties a scheme is expected to have; audits check only
/// what is claimed.
struct Claims {
    bool positive = false;
    bool elementary_stable = false;
    bool h_conditions = false;  // H1-H4 hold, hence second order
};

struct SchemeEntry {
    std::string label;
    std::string problem;
    integrator::StepMap step;
    std::optional<Representation> rep;
    std::optional<SchemeConfig> config;
    bool eq17_derived = false;
    Claims claims;
    std::string printed_denominator;  // the denominator as originally published, if any
};

inline constexpr double kMonodMu = 2.0;
inline const integrator::PowerLawParams kPowerLaw{2.0, 1.0, 4};

/// logistic, cubic, sine, monod, powerlaw.
const std::vector<std::string>& scalar_problem_names();

/// lv, sirs.
const std::vector<std::string>& system_model_names();

/// Throws UnknownName (also for system model names, which are not scalar).
const ScalarProblem& problem(const std::string& name);

std::vector<SchemeEntry> schemes(const std::string& problem_name);

/// Throws UnknownName.
SchemeEntry scheme(const std::string& problem_name, const std::string& label);

/// Initial value used by the comparison runs.
inline constexpr double kDefaultY0 = 0.5;

}  // namespace nsfd::registry
