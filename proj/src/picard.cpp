#include "bzsolve/picard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bzsolve {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_model_dim(const ModelSpec& model, std::span<const double> a) {
    if (model.dim <= 0) throw std::invalid_argument("picard: model dimension must be positive");
    if (static_cast<int>(a.size()) != model.dim) {
        throw std::invalid_argument("picard: initial data dimension mismatch");
    }
}

}  // namespace

TimeGrid::TimeGrid(double dt_fine_, std::size_t n_nodes_) : dt_fine(dt_fine_), n_nodes(n_nodes_) {
    if (!(dt_fine > 0.0)) throw std::invalid_argument("TimeGrid: dt_fine must be > 0");
    if (n_nodes < 2) throw std::invalid_argument("TimeGrid: need at least 2 nodes");
}

ExistenceEstimate existence_horizon(const ModelSpec& model, std::span<const double> a,
                                    int samples_per_axis) {
    require_model_dim(model, a);
    if (samples_per_axis < 2) {
        throw std::invalid_argument("existence_horizon: samples_per_axis must be >= 2");
    }
    const double norm_a = max_norm(a);
    if (norm_a == 0.0) {
        throw std::invalid_argument("existence_horizon: a must be nonzero");
    }
    for (double ai : a) {
        if (ai < 0.0) throw std::invalid_argument("existence_horizon: a must be nonnegative");
    }

    const int m = model.dim;
    const double radius = 2.0 * norm_a;
    const int s = samples_per_axis;

    StateVec point(m), fval(m), gval(m);
    std::vector<int> idx(m, 0);
    double m_f = 0.0;
    double m_g = 0.0;
    // Odometer walk over the s^m lattice on [0, radius]^m.
    for (;;) {
        for (int i = 0; i < m; ++i) {
            point[i] = radius * static_cast<double>(idx[i]) / static_cast<double>(s - 1);
        }
        model.decay(point, fval);
        model.source(point, gval);
        m_f = std::max(m_f, max_norm(fval));
        m_g = std::max(m_g, max_norm(gval));

        int axis = 0;
        while (axis < m && ++idx[axis] == s) {
            idx[axis] = 0;
            ++axis;
        }
        if (axis == m) break;
    }

    ExistenceEstimate est;
    est.m_f = m_f;
    est.m_g = m_g;
    est.ball_radius = radius;
    const double t_f = (m_f == 0.0) ? kInf : 1.0 / (3.0 * m_f);
    const double t_g = (m_g == 0.0) ? kInf : norm_a / (3.0 * m_g);
    est.t0 = std::min(t_f, t_g);
    return est;
}

Trajectory picard_step(const ModelSpec& model, const Trajectory& prev,
                       std::span<const double> a) {
    require_model_dim(model, a);
    const std::size_t n = prev.grid.n_nodes;
    if (prev.states.size() != n) {
        throw std::invalid_argument("picard_step: trajectory does not match its grid");
    }
    for (double ai : a) {
        if (ai < 0.0) throw std::invalid_argument("picard_step: a must be nonnegative");
    }
    const int m = model.dim;
    const double dt = prev.grid.dt_fine;

    // Evaluate f, g along the previous iterate once.
    std::vector<StateVec> fvals(n, StateVec(m)), gvals(n, StateVec(m));
    for (std::size_t r = 0; r < n; ++r) {
        if (static_cast<int>(prev.states[r].size()) != m) {
            throw std::invalid_argument("picard_step: state dimension mismatch in trajectory");
        }
        model.decay(prev.states[r], fvals[r]);
        model.source(prev.states[r], gvals[r]);
    }

    Trajectory next;
    next.grid = prev.grid;
    next.states.assign(n, StateVec(m));

    std::vector<double> phi(n);
    for (int i = 0; i < m; ++i) {
        // Phi_i(t_r): trapezoidal accumulation of f_i along the previous iterate.
        phi[0] = 0.0;
        for (std::size_t r = 1; r < n; ++r) {
            phi[r] = phi[r - 1] + 0.5 * dt * (fvals[r - 1][i] + fvals[r][i]);
        }
        next.states[0][i] = a[i];
        for (std::size_t r = 1; r < n; ++r) {
            // Trapezoid of exp(-(Phi(t_r)-Phi(s))) g_i(u_prev(s)) over [0, t_r];
            // every addend is a product of nonnegative factors.
            double acc = 0.0;
            for (std::size_t p = 1; p <= r; ++p) {
                acc += 0.5 * dt *
                       (std::exp(-(phi[r] - phi[p - 1])) * gvals[p - 1][i] +
                        std::exp(-(phi[r] - phi[p])) * gvals[p][i]);
            }
            next.states[r][i] = std::exp(-phi[r]) * a[i] + acc;
        }
    }
    return next;
}

PicardResult solve_picard(const ModelSpec& model, std::span<const double> a,
                          double horizon, const PicardOptions& opts) {
    require_model_dim(model, a);
    if (!(horizon > 0.0)) throw std::invalid_argument("solve_picard: horizon must be > 0");
    if (!(opts.tol > 0.0)) throw std::invalid_argument("solve_picard: tol must be > 0");
    if (opts.max_iter < 1) throw std::invalid_argument("solve_picard: max_iter must be >= 1");

    PicardResult result;
    const double norm_a = max_norm(a);
    if (norm_a > 0.0) {
        result.estimate = existence_horizon(model, a, opts.samples_per_axis);
        if (!opts.unsafe_horizon && horizon > result.estimate.t0) {
            throw std::invalid_argument(
                "solve_picard: horizon " + std::to_string(horizon) +
                " exceeds the existence horizon T0 = " + std::to_string(result.estimate.t0) +
                " (set unsafe_horizon to override)");
        }
    } else {
        // a == 0 sits outside the estimator's contract; the iteration itself
        // is well defined, so run without the horizon guard.
        result.estimate.ball_radius = 0.0;
        result.estimate.t0 = kInf;
    }

    const double target_dt = opts.dt_fine > 0.0 ? opts.dt_fine : horizon / 1000.0;
    const auto n_intervals =
        static_cast<std::size_t>(std::max(1.0, std::ceil(horizon / target_dt - 1e-12)));
    TimeGrid grid(horizon / static_cast<double>(n_intervals), n_intervals + 1);

    // u^1 == a on every node.
    Trajectory current;
    current.grid = grid;
    current.states.assign(grid.n_nodes, StateVec(a.begin(), a.end()));

    for (int iter = 0; iter < opts.max_iter; ++iter) {
        Trajectory next = picard_step(model, current, a);
        double delta = 0.0;
        StateVec diff(model.dim);
        for (std::size_t r = 0; r < grid.n_nodes; ++r) {
            for (int i = 0; i < model.dim; ++i) {
                diff[i] = next.states[r][i] - current.states[r][i];
            }
            delta = std::max(delta, max_norm(diff));
        }
        result.step_differences.push_back(delta);
        current = std::move(next);
        if (delta < opts.tol) {
            result.converged = true;
            break;
        }
    }
    result.trajectory = std::move(current);
    return result;
}

}  // namespace bzsolve
