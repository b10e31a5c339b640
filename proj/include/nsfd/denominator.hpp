#pragma once

// Denominator functions phi(h, y) and the checker for the four sufficient
// conditions (positivity/consistency, stability bound, order-2 curvature,
// weights).

#include <string>
#include <vector>

#include "nsfd/core_model.hpp"

namespace nsfd::denominator {

/// lambda(y) = -f'(y) + 2 beta f-(y).
ScalarFn lambda_from_scheme(const ScalarProblem& problem, const Representation& rep, double beta);

/// (1 - exp(-x)) / x, with phim(0) = 1. Positive for every finite x; +inf
/// once exp(-x) overflows.
double phim(double x);

/// Throws NonPositiveStep for h <= 0.
double phi(const DenominatorSpec& spec, double h, double y);

DenominatorSpec eq17(ScalarFn lambda, std::string description);
DenominatorSpec eq17_for(const ScalarProblem& problem, const Representation& rep, double beta,
                         std::string description);
/// phi(h) = (1 - exp(-R h)) / R; R = 0 gives phi = h.
DenominatorSpec constant_rate(double rate, std::string description);
DenominatorSpec custom(std::function<double(double h, double y)> fn, std::string description);

/// d^2 phi / dh^2 at h = 0 from one-sided second differences (phi(0) = 0)
/// with one Richardson step, base step h0.
double curvature_at_zero(const DenominatorSpec& spec, double y, double h0 = 1e-3);

struct ConditionResult {
    bool pass = false;
    bool vacuous = false;
    std::string witness;
};

struct HReport {
    ConditionResult h1;
    ConditionResult h2;
    ConditionResult h3;
    ConditionResult h4;
    [[nodiscard]] bool all_pass() const { return h1.pass && h2.pass && h3.pass && h4.pass; }
};

inline const std::vector<double> kH2Steps{0.1, 1.0, 10.0, 100.0};
inline constexpr double kH3RelTol = 1e-4;

/// Needs classified equilibria on the problem.
HReport check_H_conditions(const ScalarProblem& problem, const Representation& rep,
                           const SchemeConfig& config);

}  // namespace nsfd::denominator
