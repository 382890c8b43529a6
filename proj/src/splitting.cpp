#include "bzsolve/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bzsolve/detail/scalar_forms.hpp"

namespace bzsolve {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_field_size(const Field1D& f, const Grid1D& grid, const char* what) {
    if (f.size() != grid.node_count()) {
        throw std::invalid_argument(std::string(what) + ": field has " +
                                    std::to_string(f.size()) + " nodes, grid expects " +
                                    std::to_string(grid.node_count()));
    }
}

void check_reaction_domain(const Field1D& u, double q, const kernels::KernelTable& kt) {
    if (kt.all_inside_open(u.data(), u.size(), -q, kInf)) return;
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (!(u[j] + q > 0.0)) {
            throw std::domain_error("reaction_substep: u + q <= 0 at node " + std::to_string(j) +
                                    " (u = " + std::to_string(u[j]) + ")");
        }
    }
    throw std::domain_error("reaction_substep: non-finite value in u field");
}

}  // namespace

Grid1D::Grid1D(double length_, int cells_, BoundaryKind bc_)
    : length(length_), cells(cells_), bc(bc_) {
    if (!(length > 0.0)) throw std::invalid_argument("Grid1D: length must be > 0");
    if (cells < 3) throw std::invalid_argument("Grid1D: need at least 3 cells");
}

double stability_limit(double d, double dx) {
    if (!(dx > 0.0)) throw std::invalid_argument("stability_limit: dx must be > 0");
    if (!(d >= 0.0)) throw std::invalid_argument("stability_limit: d must be >= 0");
    return dx * dx / std::max(2.0, 2.0 * d);
}

SplitState reaction_substep(const BZParams& p, const SplitState& s, double dt,
                            const kernels::KernelTable& kt) {
    if (!(dt > 0.0)) throw std::invalid_argument("reaction_substep: dt must be > 0");
    if (s.u.size() != s.v.size() || s.u.empty()) {
        throw std::invalid_argument("reaction_substep: u and v must be nonempty and equal-sized");
    }
    check_reaction_domain(s.u, p.q, kt);

    SplitState out;
    out.step = s.step;
    out.time = s.time;
    out.u.resize(s.u.size());
    out.v.resize(s.v.size());
    kt.bz_reaction(s.u.data(), s.v.data(), out.u.data(), out.v.data(), s.u.size(), p.epsilon,
                   p.q, p.h, dt);
    return out;
}

Field1D diffusion_substep(const Field1D& f, double diffusivity, double dt, const Grid1D& grid,
                          const kernels::KernelTable& kt) {
    if (!(dt > 0.0)) throw std::invalid_argument("diffusion_substep: dt must be > 0");
    if (!(diffusivity >= 0.0)) {
        throw std::invalid_argument("diffusion_substep: diffusivity must be >= 0");
    }
    require_field_size(f, grid, "diffusion_substep");
    if (diffusivity == 0.0) return f;

    const double dx = grid.dx();
    const double lam = diffusivity * dt / (dx * dx);
    if (!(lam <= 0.5)) {
        throw std::invalid_argument("diffusion_substep: stability violated, lam = " +
                                    std::to_string(lam) + " > 1/2 (need dt <= dx^2/(2 diffusivity))");
    }

    const std::size_t n = f.size();
    Field1D out(n);
    kt.ftcs_interior(f.data(), out.data(), n, lam);
    if (grid.bc == BoundaryKind::neumann_homogeneous) {
        // Mirror ghosts f_{-1} = f_1 and f_{J+1} = f_{J-1}.
        out[0] = detail::ftcs_node(f[1], f[0], f[1], lam);
        out[n - 1] = detail::ftcs_node(f[n - 2], f[n - 1], f[n - 2], lam);
    } else {
        out[0] = detail::ftcs_node(f[n - 1], f[0], f[1], lam);
        out[n - 1] = detail::ftcs_node(f[n - 2], f[n - 1], f[0], lam);
    }
    return out;
}

Field1D cell_average(const std::function<double(double)>& fn, const Grid1D& grid) {
    const double dx = grid.dx();
    const double half = 0.5 * dx;
    const std::size_t n = grid.node_count();
    Field1D out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double lo = std::max(0.0, grid.node(j) - half);
        const double hi = std::min(grid.length, grid.node(j) + half);
        out[j] = (fn(lo) + 4.0 * fn(0.5 * (lo + hi)) + fn(hi)) / 6.0;
    }
    return out;
}

SplittingRun run_splitting(const BZParams& p, const Grid1D& grid, const Field1D& u0,
                           const Field1D& v0, double dt, long n_steps, long snapshot_every,
                           const kernels::KernelTable& kt) {
    require_field_size(u0, grid, "run_splitting(u0)");
    require_field_size(v0, grid, "run_splitting(v0)");
    if (n_steps < 1) throw std::invalid_argument("run_splitting: n_steps must be >= 1");
    if (snapshot_every < 1) {
        throw std::invalid_argument("run_splitting: snapshot_every must be >= 1");
    }
    const double limit = stability_limit(std::max(1.0, p.d), grid.dx());
    if (!(dt > 0.0) || dt > limit) {
        throw std::invalid_argument(
            "run_splitting: dt must satisfy 0 < dt <= dx^2/max{2, 2d}; got dt = " +
            std::to_string(dt) + ", limit = " + std::to_string(limit));
    }

    SplittingRun run;
    run.region_preconditions_held =
        kt.all_inside_open(u0.data(), u0.size(), p.q, 1.0) &&
        kt.all_inside_open(v0.data(), v0.size(), p.q, 1.0);

    SplitState state{u0, v0, 0, 0.0};
    run.snapshots.push_back(state);
    for (long k = 1; k <= n_steps; ++k) {
        state = reaction_substep(p, state, dt, kt);
        state.u = diffusion_substep(state.u, 1.0, dt, grid, kt);
        if (p.d > 0.0) {
            state.v = diffusion_substep(state.v, p.d, dt, grid, kt);
        }
        state.step = k;
        state.time = static_cast<double>(k) * dt;
        if (k % snapshot_every == 0 || k == n_steps) {
            run.snapshots.push_back(state);
        }
    }
    return run;
}

}  // namespace bzsolve
