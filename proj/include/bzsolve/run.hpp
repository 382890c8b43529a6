#pragma once

#include <string>

#include "bzsolve/config.hpp"
#include "bzsolve/csv.hpp"
#include "bzsolve/kernels.hpp"
#include "bzsolve/splitting.hpp"

namespace bzsolve {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitSolver = 2;
inline constexpr int kExitRegionViolated = 3;

struct RunOutcome {
    int exit_code = kExitOk;
    std::string summary;  ///< one line for stdout
};

/// Resolves "auto" | "scalar" | "avx2" to a kernel table; throws config_error
/// when the requested backend is unsupported on this host.
const kernels::KernelTable& resolve_kernels(const std::string& name);

/// Materializes nodal initial data for a field run (constant / bump / random
/// / csv per InitialSpec).
io::InitialField build_initial_field(const RunConfig& cfg, const Grid1D& grid);

/// Runs the configured mode end to end: solve, write the CSV named by
/// cfg.output (analyze writes no file), and build the one-line summary.
/// Throws config_error for configuration-shaped failures and the solver
/// exceptions otherwise; a region violation is not an exception but exit
/// code 3 with the violation count in the summary.
RunOutcome execute_run(const RunConfig& cfg);

}  // namespace bzsolve
