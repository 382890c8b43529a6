#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bzsolve/picard.hpp"
#include "bzsolve/splitting.hpp"

namespace bzsolve::io {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double x);

/// Strict full-token parse; throws std::runtime_error on trailing garbage.
double parse_double(std::string_view token);

/// ODE trajectory, header k,t,u_1..u_m, one row per node.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
Trajectory read_trajectory_csv(std::istream& is);

/// PDE snapshots, header k,t,j,x,u,v, one row per (snapshot, node).
void write_snapshots_csv(std::ostream& os, std::span<const SplitState> snapshots,
                         const Grid1D& grid);
std::vector<SplitState> read_snapshots_csv(std::istream& is);

/// Per-node initial data, header j,u,v; j must run 0..n-1 in order.
struct InitialField {
    Field1D u;
    Field1D v;
};
InitialField read_initial_field_csv(std::istream& is);

}  // namespace bzsolve::io
