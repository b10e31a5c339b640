#pragma once

// Sampling and root/extremum search helpers used by the registry, the
// splitter and the audits.

#include <cstddef>
#include <vector>

#include "nsfd/core_model.hpp"

namespace nsfd::numerics {

inline constexpr std::size_t kScanPoints = 10'000;
inline constexpr double kRootDedupSpacing = 1e-8;

/// n + 1 uniformly spaced points covering [iv.lo, iv.hi] (both endpoints).
std::vector<double> uniform_grid(Interval iv, std::size_t n);

/// Uniform grid over iv restricted to y >= 0, with the extra points appended,
/// sorted and deduplicated.
std::vector<double> sample_points(Interval iv, std::size_t n, const std::vector<double>& extra = {});

/// Roots of fn on iv: exact zeros on the scan grid plus every sign change
/// refined by bisection. Sorted ascending, deduplicated.
std::vector<double> scan_roots(const ScalarFn& fn, Interval iv, std::size_t n = kScanPoints);

/// Bisection on a bracketing interval [a, b] with fn(a) * fn(b) < 0.
double bisect_root(const ScalarFn& fn, double a, double b);

struct Extremum {
    double argument = 0.0;
    double value = 0.0;
};

/// Min / max of fn on iv by dense sampling followed by Brent refinement
/// around the best sample.
Extremum minimize(const ScalarFn& fn, Interval iv, std::size_t n = kScanPoints);
Extremum maximize(const ScalarFn& fn, Interval iv, std::size_t n = kScanPoints);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace nsfd::numerics
