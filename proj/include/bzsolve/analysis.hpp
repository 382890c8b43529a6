#pragma once

#include <span>
#include <utility>
#include <vector>

#include "bzsolve/model.hpp"
#include "bzsolve/splitting.hpp"

namespace bzsolve {

/// Open axis-aligned box: component i admissible iff lo[i] < value < hi[i].
struct Region {
    std::vector<double> lo;
    std::vector<double> hi;

    Region(std::vector<double> lo, std::vector<double> hi);

    /// The discrete invariant region (q, 1) per component.
    static Region bz_invariant(const BZParams& p);
};

enum class BoundSide { below_lower, above_upper };

struct Violation {
    long step = 0;
    long node = 0;
    int component = 0;  ///< 0 = u, 1 = v
    double value = 0.0;
    double bound = 0.0;
    BoundSide side = BoundSide::below_lower;
};

struct ViolationReport {
    std::vector<Violation> violations;
    bool empty() const { return violations.empty(); }
};

/// Scans every nodal value of every snapshot against the open box; returns
/// all violations, not just the first.  Membership is strict (endpoints are
/// outside).
ViolationReport check_region(std::span<const SplitState> snapshots, const Region& r);

/// The root of phi(u) = u(1-u)(u+q) - eps h q (u-q) in (q, 1), by bisection.
/// Requires the bracket phi(q) > 0 > phi(1) (throws std::invalid_argument
/// otherwise); runs until both the interval width and |phi| drop below tol.
double ubar(const BZParams& p, double tol);

/// Least-squares slope of log(error) against log(dt).  Needs >= 2 samples,
/// dt strictly decreasing, errors strictly positive.
double convergence_order(std::span<const std::pair<double, double>> dt_error_pairs);

/// One plain forward-Euler step on the uniform-in-space BZ reaction term.
/// No positivity guarantee; exists so tests can exhibit (state, dt) pairs
/// where Euler leaves the nonnegative orthant while the semi-implicit step
/// stays in (q, 1)^2.
std::pair<double, double> forward_euler_counterexample(const BZParams& p,
                                                       std::pair<double, double> state,
                                                       double dt);

}  // namespace bzsolve
