#pragma once

#include <functional>
#include <vector>

#include "bzsolve/kernels.hpp"
#include "bzsolve/model.hpp"

namespace bzsolve {

enum class BoundaryKind { neumann_homogeneous, periodic };

/// Uniform 1-D grid on [0, L] with J cells, x_j = j dx, dx = L/J.
/// Homogeneous Neumann fields carry J+1 nodes (j = 0..J); periodic fields
/// carry J nodes (j = 0..J-1, node J identified with node 0).
struct Grid1D {
    double length = 0.0;
    int cells = 0;
    BoundaryKind bc = BoundaryKind::neumann_homogeneous;

    Grid1D() = default;
    Grid1D(double length, int cells, BoundaryKind bc);

    double dx() const { return length / cells; }
    std::size_t node_count() const {
        return bc == BoundaryKind::periodic ? static_cast<std::size_t>(cells)
                                            : static_cast<std::size_t>(cells) + 1;
    }
    double node(std::size_t j) const { return static_cast<double>(j) * dx(); }
};

/// Nodal samples u_j on a Grid1D; length follows the grid's bc convention.
using Field1D = std::vector<double>;

/// Paired fields plus the macro-step counter; time == step * dt.
struct SplitState {
    Field1D u;
    Field1D v;
    long step = 0;
    double time = 0.0;
};

/// Largest admissible macro step: dx^2 / max{2, 2d}.
double stability_limit(double d, double dx);

/// Reaction half of the splitting: at every node independently the
/// semi-implicit BZ update, identical (bitwise) to de_step with
/// bz_reaction_model at that node's (u_j, v_j).  If all inputs lie in (q,1)
/// so do all outputs, for any dt > 0.  Throws std::domain_error when some
/// u_j + q <= 0.
SplitState reaction_substep(const BZParams& p, const SplitState& s, double dt,
                            const kernels::KernelTable& kt = kernels::active());

/// FTCS diffusion step f_j <- f_j + lam (f_{j+1} - 2 f_j + f_{j-1}),
/// lam = diffusivity dt / dx^2, with mirror ghost nodes for homogeneous
/// Neumann and modular indices for periodic.  Requires lam <= 1/2; under that
/// bound every output is a convex combination of inputs, so the output range
/// is contained in the input range (discrete maximum principle).
Field1D diffusion_substep(const Field1D& f, double diffusivity, double dt,
                          const Grid1D& grid,
                          const kernels::KernelTable& kt = kernels::active());

/// Nodal initial data: node j gets the average of fn over
/// [x_j - dx/2, x_j + dx/2] intersected with [0, L], by Simpson's rule with
/// three points per cell (exact for cubics).
Field1D cell_average(const std::function<double(double)>& fn, const Grid1D& grid);

struct SplittingRun {
    std::vector<SplitState> snapshots;
    /// True iff every initial nodal value lay strictly inside (q, 1); only
    /// then does the invariant-region guarantee apply (otherwise the scheme
    /// still preserves nonnegativity).
    bool region_preconditions_held = false;
};

/// Alternates the reaction substep with FTCS diffusion of u (diffusivity 1)
/// and of v (diffusivity d; skipped when d == 0) for n_steps macro steps.
/// Snapshots are recorded at step 0, every snapshot_every steps, and at the
/// final step.  Requires dt <= stability_limit(max(1, d), dx).
SplittingRun run_splitting(const BZParams& p, const Grid1D& grid, const Field1D& u0,
                           const Field1D& v0, double dt, long n_steps, long snapshot_every,
                           const kernels::KernelTable& kt = kernels::active());

}  // namespace bzsolve
