#include "nsfd/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

namespace nsfd::numerics {

std::vector<double> uniform_grid(Interval iv, std::size_t n) {
    if (n == 0) {
        return {iv.lo};
    }
    std::vector<double> pts(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        pts[i] = iv.lo + iv.width() * static_cast<double>(i) / static_cast<double>(n);
    }
    pts.back() = iv.hi;
    return pts;
}

std::vector<double> sample_points(Interval iv, std::size_t n, const std::vector<double>& extra) {
    const Interval nonneg{std::max(iv.lo, 0.0), iv.hi};
    std::vector<double> pts;
    if (nonneg.hi >= nonneg.lo) {
        pts = uniform_grid(nonneg, n);
    }
    for (double y : extra) {
        if (y >= nonneg.lo && y <= nonneg.hi) {
            pts.push_back(y);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

double bisect_root(const ScalarFn& fn, double a, double b) {
    // Tolerance of 1 ulp-level on the bracket; boost stops when the bracket
    // collapses or fn hits zero exactly.
    auto tol = boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 1);
    std::uintmax_t max_iter = 200;
    const auto [lo, hi] = boost::math::tools::bisect(fn, a, b, tol, max_iter);
    const double flo = std::abs(fn(lo));
    const double fhi = std::abs(fn(hi));
    return flo <= fhi ? lo : hi;
}

std::vector<double> scan_roots(const ScalarFn& fn, Interval iv, std::size_t n) {
    const auto grid = uniform_grid(iv, n);
    std::vector<double> values(grid.size());
    std::transform(grid.begin(), grid.end(), values.begin(), [&](double y) { return fn(y); });

    std::vector<double> roots;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (values[i] == 0.0) {
            roots.push_back(grid[i]);
            continue;
        }
        if (i + 1 < grid.size() && values[i + 1] != 0.0 &&
            std::signbit(values[i]) != std::signbit(values[i + 1])) {
            roots.push_back(bisect_root(fn, grid[i], grid[i + 1]));
        }
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> dedup;
    for (double r : roots) {
        if (dedup.empty() || r - dedup.back() > kRootDedupSpacing) {
            dedup.push_back(r);
        }
    }
    return dedup;
}

namespace {

Extremum refine_min(const ScalarFn& fn, Interval iv, std::size_t n) {
    const auto grid = uniform_grid(iv, n);
    std::size_t best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = fn(grid[i]);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    Extremum out{grid[best], best_val};
    const double lo = grid[best == 0 ? 0 : best - 1];
    const double hi = grid[std::min(best + 1, grid.size() - 1)];
    if (hi > lo) {
        const auto [arg, val] = boost::math::tools::brent_find_minima(
            [&](double y) { return fn(y); }, lo, hi, std::numeric_limits<double>::digits / 2);
        if (val < out.value) {
            out = {arg, val};
        }
    }
    return out;
}

}  // namespace

Extremum minimize(const ScalarFn& fn, Interval iv, std::size_t n) {
    return refine_min(fn, iv, n);
}

Extremum maximize(const ScalarFn& fn, Interval iv, std::size_t n) {
    const auto neg = refine_min([&](double y) { return -fn(y); }, iv, n);
    return {neg.argument, -neg.value};
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("log_log_slope needs at least two paired samples");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace nsfd::numerics
