#pragma once

// Constructive splitting of a right-hand side into signed parts:
//   f = f+ + f-      (f+ >= 0, f- <= 0), via a shift g with g >= M;
//   f = f+ + y f-    built from the first one applied to f(y)/y.

#include <cstddef>
#include <string>
#include <vector>

#include "nsfd/core_model.hpp"

namespace nsfd::splitting {

enum class TailSign { positive, negative };

const char* to_string(TailSign s);

struct SplitBounds {
    std::vector<double> zeros;  // sorted roots on the domain
    double y_max_zero = 0.0;    // largest root
    double l = 0.0;             // min f on [0, y_max_zero]
    double L = 0.0;             // max f on [0, y_max_zero]
    double M = 0.0;             // max(|l|, |L|)
    TailSign tail_sign = TailSign::positive;
};

/// Additive pair with f = plus + minus.
struct AdditiveSplit {
    ScalarFn plus;
    ScalarFn minus;
    std::string description;
};

std::vector<double> find_zeros(const ScalarFn& f, Interval domain);
std::vector<double> find_zeros(const ScalarProblem& problem);

/// Throws EmptyZeros when zeros is empty, AmbiguousTail when the sign of f
/// past the last zero is not consistent.
SplitBounds compute_bounds(const ScalarFn& f, Interval domain, const std::vector<double>& zeros);
SplitBounds compute_bounds(const ScalarProblem& problem, const std::vector<double>& zeros);

/// The constant member of the shift class, g(y) = M.
ScalarFn constant_shift(double M);

/// Case 1 (positive tail): plus = f + g, minus = -g.
/// Case 2 (negative tail): plus = g, minus = f - g.
/// Throws GNotInClass when g dips below M on y >= 0 samples of `domain`.
AdditiveSplit lemma1_split(const ScalarFn& f, Interval domain, const SplitBounds& bounds,
                           const ScalarFn& g_choice);
AdditiveSplit lemma1_split(const ScalarProblem& problem, const SplitBounds& bounds,
                           const ScalarFn& g_choice);

/// Representation f = f+ + y f- built from the quotient f(y)/y (f(0) = 0) or
/// from the shifted function f(y) - f(0) (f(0) > 0). Throws NegativeAtZero.
Representation theorem1_split(const ScalarProblem& problem);

struct RepresentationReport {
    std::size_t samples = 0;
    double max_plus_violation = 0.0;   // max(-f+) over samples, clipped at 0
    double max_minus_violation = 0.0;  // max(f-) over samples, clipped at 0
    double max_residual = 0.0;         // scaled |f+ + y f- - f|
    double worst_plus_y = 0.0;
    double worst_minus_y = 0.0;
    double worst_residual_y = 0.0;
    bool pass = false;
};

inline constexpr double kRepresentationTol = 1e-10;

RepresentationReport validate_representation(const ScalarProblem& problem, const Representation& rep);

}  // namespace nsfd::splitting
