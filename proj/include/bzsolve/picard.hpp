#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bzsolve/model.hpp"

namespace bzsolve {

/// Uniform time grid starting at t = 0 with nodes t_r = r * dt_fine.
struct TimeGrid {
    double dt_fine = 0.0;
    std::size_t n_nodes = 0;

    TimeGrid() = default;
    TimeGrid(double dt_fine, std::size_t n_nodes);

    double node(std::size_t r) const { return static_cast<double>(r) * dt_fine; }
    double horizon() const { return node(n_nodes - 1); }
};

/// Time-indexed states on a TimeGrid; states.size() == grid.n_nodes.
struct Trajectory {
    TimeGrid grid;
    std::vector<StateVec> states;
};

/// Existence horizon data: T0 = min{ 1/(3 M_f), ||a|| / (3 M_g) }, where a
/// zero denominator contributes +infinity.
struct ExistenceEstimate {
    double m_f = 0.0;
    double m_g = 0.0;
    double t0 = 0.0;
    double ball_radius = 0.0;  ///< 2 ||a||
};

/// Estimates M_f, M_g as lattice maxima of ||f(v)||, ||g(v)|| over the
/// nonnegative box [0, 2||a||]^m with samples_per_axis points per axis
/// (endpoints included); iterates of the successive approximation stay
/// nonnegative, so the nonnegative orthant suffices.  Requires a != 0.
ExistenceEstimate existence_horizon(const ModelSpec& model, std::span<const double> a,
                                    int samples_per_axis = 101);

/// One successive-approximation sweep: solves the linear non-autonomous
/// system u' = -F(u_prev) u + g(u_prev), u(0) = a, componentwise by the exact
/// integrating factor with trapezoidal quadrature on the grid of prev.
/// Every output component is a sum of products of nonnegative factors, hence
/// nonnegative by construction.
Trajectory picard_step(const ModelSpec& model, const Trajectory& prev,
                       std::span<const double> a);

struct PicardOptions {
    double dt_fine = 0.0;        ///< target quadrature step; 0 means horizon/1000
    double tol = 1e-10;          ///< sup-over-nodes stopping tolerance
    int max_iter = 200;
    int samples_per_axis = 101;  ///< lattice resolution of the horizon guard
    bool unsafe_horizon = false; ///< skip the horizon <= T0 enforcement
};

struct PicardResult {
    Trajectory trajectory;
    /// delta_l = sup-node max-norm difference between consecutive iterates,
    /// one entry per completed sweep.
    std::vector<double> step_differences;
    bool converged = false;
    ExistenceEstimate estimate;
};

/// Iterates picard_step from the constant trajectory u^1 == a until the
/// sup-node difference of consecutive iterates drops below tol or max_iter
/// sweeps have run.  Requires horizon <= T0 (for a != 0) unless
/// opts.unsafe_horizon is set.  Non-convergence is reported in the result,
/// never silently dropped.
PicardResult solve_picard(const ModelSpec& model, std::span<const double> a,
                          double horizon, const PicardOptions& opts = {});

}  // namespace bzsolve
