#include "bzsolve/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bzsolve {

namespace {

double bz_cubic(double u, const BZParams& p) {
    return u * (1.0 - u) * (u + p.q) - p.epsilon * p.h * p.q * (u - p.q);
}

void scan_field(const Field1D& f, long step, int component, double lo, double hi,
                ViolationReport& report) {
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (!(f[j] > lo)) {
            report.violations.push_back(
                {step, static_cast<long>(j), component, f[j], lo, BoundSide::below_lower});
        } else if (!(f[j] < hi)) {
            report.violations.push_back(
                {step, static_cast<long>(j), component, f[j], hi, BoundSide::above_upper});
        }
    }
}

}  // namespace

Region::Region(std::vector<double> lo_, std::vector<double> hi_)
    : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (lo.size() != hi.size() || lo.empty()) {
        throw std::invalid_argument("Region: lo and hi must be nonempty and equal-sized");
    }
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!(lo[i] < hi[i])) {
            throw std::invalid_argument("Region: lo must be < hi in every component");
        }
    }
}

Region Region::bz_invariant(const BZParams& p) { return Region({p.q, p.q}, {1.0, 1.0}); }

ViolationReport check_region(std::span<const SplitState> snapshots, const Region& r) {
    if (r.lo.size() != 2) {
        throw std::invalid_argument("check_region: snapshots carry 2 components (u, v)");
    }
    ViolationReport report;
    for (const SplitState& s : snapshots) {
        scan_field(s.u, s.step, 0, r.lo[0], r.hi[0], report);
        scan_field(s.v, s.step, 1, r.lo[1], r.hi[1], report);
    }
    return report;
}

double ubar(const BZParams& p, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("ubar: tol must be > 0");
    double lo = p.q;
    double hi = 1.0;
    const double phi_lo = bz_cubic(lo, p);
    const double phi_hi = bz_cubic(hi, p);
    if (!(phi_lo > 0.0 && phi_hi < 0.0)) {
        throw std::invalid_argument("ubar: no sign bracket on [q, 1] (phi(q) = " +
                                    std::to_string(phi_lo) + ", phi(1) = " +
                                    std::to_string(phi_hi) + ")");
    }
    double mid = 0.5 * (lo + hi);
    // Bisect until the interval is narrower than tol and the residual is
    // below tol; the second condition can need a few extra halvings.
    for (int i = 0; i < 200; ++i) {
        mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;  // interval exhausted at this precision
        const double phi_mid = bz_cubic(mid, p);
        if (hi - lo <= tol && std::abs(phi_mid) < tol) break;
        if (phi_mid > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return mid;
}

double convergence_order(std::span<const std::pair<double, double>> dt_error_pairs) {
    if (dt_error_pairs.size() < 2) {
        throw std::invalid_argument("convergence_order: need at least 2 (dt, error) pairs");
    }
    double prev_dt = std::numeric_limits<double>::infinity();
    for (const auto& [dt, err] : dt_error_pairs) {
        if (!(dt > 0.0) || !(dt < prev_dt)) {
            throw std::invalid_argument("convergence_order: dt must be positive and strictly decreasing");
        }
        if (!(err > 0.0)) {
            throw std::invalid_argument("convergence_order: errors must be strictly positive");
        }
        prev_dt = dt;
    }
    // Least-squares slope of log(err) on log(dt).
    const double n = static_cast<double>(dt_error_pairs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [dt, err] : dt_error_pairs) {
        const double x = std::log(dt);
        const double y = std::log(err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::pair<double, double> forward_euler_counterexample(const BZParams& p,
                                                       std::pair<double, double> state,
                                                       double dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("forward_euler_counterexample: dt must be > 0");
    }
    const ModelSpec model = bz_reaction_model(p);
    const StateVec s{state.first, state.second};
    const StateVec rhs = evaluate_rhs(model, s);
    return {state.first + dt * rhs[0], state.second + dt * rhs[1]};
}

}  // namespace bzsolve
