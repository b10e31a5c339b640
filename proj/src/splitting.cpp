#include "nsfd/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "nsfd/errors.hpp"
#include "nsfd/numerics.hpp"

namespace nsfd::splitting {

namespace {

constexpr std::size_t kTailConfirmPoints = 10;
constexpr double kQuotientGuard = 1e-8;

Interval nonneg(Interval iv) { return {std::max(0.0, iv.lo), iv.hi}; }

TailSign tail_sign_of(const ScalarFn& f, Interval domain, double y_max_zero) {
    const double delta = 1e-3 * (1.0 + y_max_zero);
    const double first = y_max_zero + delta;
    const double last = std::max(domain.hi, first + delta);
    std::vector<double> probes{first};
    for (std::size_t k = 1; k <= kTailConfirmPoints; ++k) {
        probes.push_back(first + (last - first) * static_cast<double>(k) / kTailConfirmPoints);
    }
    const double v0 = f(first);
    for (double y : probes) {
        const double v = f(y);
        if (v == 0.0 || v0 == 0.0 || std::signbit(v) != std::signbit(v0)) {
            std::ostringstream os;
            os << "sign of f past y = " << y_max_zero << " is not constant (f(" << first << ") = " << v0
               << ", f(" << y << ") = " << v << ")";
            throw AmbiguousTail(os.str());
        }
    }
    return v0 > 0.0 ? TailSign::positive : TailSign::negative;
}

/// Quotient f(y)/y with the removable point filled in by f'(0).
ScalarFn guarded_quotient(ScalarFn f, double df0) {
    return [f = std::move(f), df0](double y) {
        return std::abs(y) < kQuotientGuard ? df0 : f(y) / y;
    };
}

/// Splits q into q+ + q- on y >= 0; handles the zero-free case directly.
AdditiveSplit split_quotient(const ScalarFn& q, Interval domain) {
    const auto zeros = find_zeros(q, domain);
    if (zeros.empty()) {
        // No sign change: q is already one-signed.
        const double probe = q(nonneg(domain).lo);
        if (probe >= 0.0) {
            return {q, [](double) { return 0.0; }, "quotient nonnegative: q+ = q, q- = 0"};
        }
        return {[](double) { return 0.0; }, q, "quotient nonpositive: q+ = 0, q- = q"};
    }
    const auto bounds = compute_bounds(q, domain, zeros);
    return lemma1_split(q, domain, bounds, constant_shift(bounds.M));
}

}  // namespace

const char* to_string(TailSign s) { return s == TailSign::positive ? "positive" : "negative"; }

std::vector<double> find_zeros(const ScalarFn& f, Interval domain) {
    return numerics::scan_roots(f, nonneg(domain));
}

std::vector<double> find_zeros(const ScalarProblem& problem) {
    return find_zeros(problem.f, problem.domain_hint);
}

SplitBounds compute_bounds(const ScalarFn& f, Interval domain, const std::vector<double>& zeros) {
    if (zeros.empty()) {
        throw EmptyZeros("bounds are undefined without at least one zero");
    }
    SplitBounds b;
    b.zeros = zeros;
    std::sort(b.zeros.begin(), b.zeros.end());
    b.y_max_zero = b.zeros.back();
    const Interval head{0.0, b.y_max_zero};
    if (head.hi > head.lo) {
        b.l = numerics::minimize(f, head).value;
        b.L = numerics::maximize(f, head).value;
    } else {
        b.l = b.L = f(head.lo);
    }
    b.M = std::max(std::abs(b.l), std::abs(b.L));
    b.tail_sign = tail_sign_of(f, domain, b.y_max_zero);
    return b;
}

SplitBounds compute_bounds(const ScalarProblem& problem, const std::vector<double>& zeros) {
    return compute_bounds(problem.f, problem.domain_hint, zeros);
}

ScalarFn constant_shift(double M) {
    return [M](double) { return M; };
}

AdditiveSplit lemma1_split(const ScalarFn& f, Interval domain, const SplitBounds& bounds,
                           const ScalarFn& g_choice) {
    for (double y : numerics::sample_points(domain, numerics::kScanPoints)) {
        const double g = g_choice(y);
        if (!(g >= bounds.M)) {
            std::ostringstream os;
            os << "g(" << y << ") = " << g << " < M = " << bounds.M;
            throw GNotInClass(os.str());
        }
    }
    std::ostringstream desc;
    if (bounds.tail_sign == TailSign::positive) {
        desc << "positive tail: plus = f + g, minus = -g (M = " << bounds.M << ")";
        return {[f, g_choice](double y) { return f(y) + g_choice(y); },
                [g_choice](double y) { return -g_choice(y); }, desc.str()};
    }
    desc << "negative tail: plus = g, minus = f - g (M = " << bounds.M << ")";
    return {g_choice, [f, g_choice](double y) { return f(y) - g_choice(y); }, desc.str()};
}

AdditiveSplit lemma1_split(const ScalarProblem& problem, const SplitBounds& bounds,
                           const ScalarFn& g_choice) {
    return lemma1_split(problem.f, problem.domain_hint, bounds, g_choice);
}

Representation theorem1_split(const ScalarProblem& problem) {
    const double f0 = problem.f(0.0);
    if (f0 < 0.0) {
        std::ostringstream os;
        os << problem.name << ": f(0) = " << f0;
        throw NegativeAtZero(os.str());
    }

    // With f(0) > 0 the constant f(0) is carried in f+ and the remainder
    // f(y) - f(0) vanishes at the origin.
    const double shift = f0;
    ScalarFn base = shift == 0.0 ? problem.f
                                 : ScalarFn([f = problem.f, shift](double y) { return f(y) - shift; });
    const ScalarFn q = guarded_quotient(base, problem.df(0.0));
    AdditiveSplit qs = split_quotient(q, problem.domain_hint);

    Representation rep;
    rep.provenance = Provenance::auto_theorem1;
    rep.f_plus = [shift, qp = qs.plus](double y) { return shift + y * qp(y); };
    rep.f_minus = qs.minus;
    std::ostringstream desc;
    desc << "q(y) = (f(y) - " << shift << ")/y; " << qs.description << "; f+ = " << shift
         << " + y q+, f- = q-";
    rep.description = desc.str();
    return rep;
}

RepresentationReport validate_representation(const ScalarProblem& problem, const Representation& rep) {
    std::vector<double> extra{problem.domain_hint.lo, problem.domain_hint.hi};
    for (const auto& eq : problem.equilibria) {
        extra.push_back(eq.y_star);
    }
    const auto pts = numerics::sample_points(problem.domain_hint, numerics::kScanPoints, extra);

    RepresentationReport r;
    r.samples = pts.size();
    for (double y : pts) {
        const double fp = rep.f_plus(y);
        const double fm = rep.f_minus(y);
        const double f = problem.f(y);
        if (-fp > r.max_plus_violation || std::isnan(fp)) {
            r.max_plus_violation = std::isnan(fp) ? INFINITY : -fp;
            r.worst_plus_y = y;
        }
        if (fm > r.max_minus_violation || std::isnan(fm)) {
            r.max_minus_violation = std::isnan(fm) ? INFINITY : fm;
            r.worst_minus_y = y;
        }
        const double scale = 1.0 + std::abs(fp) + std::abs(y * fm);
        const double res = std::abs(fp + y * fm - f) / scale;
        if (res > r.max_residual || std::isnan(res)) {
            r.max_residual = std::isnan(res) ? INFINITY : res;
            r.worst_residual_y = y;
        }
    }
    r.pass = r.max_plus_violation <= kRepresentationTol && r.max_minus_violation <= kRepresentationTol &&
             r.max_residual <= kRepresentationTol;
    return r;
}

}  // namespace nsfd::splitting
