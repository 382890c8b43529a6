#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "bzsolve/model.hpp"
#include "bzsolve/splitting.hpp"

namespace bzsolve {

/// Raised for malformed or inconsistent configuration; maps to exit code 1.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RunMode { ode_de, ode_picard, pde_split, analyze };

std::string_view mode_name(RunMode mode);
RunMode mode_from_name(std::string_view name);

/// How the initial data is produced.
///   constant:U,V            every node gets (U, V)
///   bump:CENTER,WIDTH,AMP   Gaussian profile cell-averaged onto the grid,
///                           then clipped into [q+margin, 1-margin]
///   random:SEED             per-node uniform draws from (q+margin, 1-margin)
///   csv:PATH                per-node values from a j,u,v file
struct InitialSpec {
    enum class Kind { constant, bump, random_uniform, csv };
    Kind kind = Kind::constant;
    double const_u = 0.5;
    double const_v = 0.5;
    double center = 0.5;
    double width = 0.1;
    double amplitude = 0.3;
    unsigned long long seed = 1;
    std::string path;
};

InitialSpec parse_initial_spec(std::string_view text);

struct RunConfig {
    RunMode mode = RunMode::ode_de;

    // Reaction parameters (defaults reproduce the standard benchmark set).
    double epsilon = 0.032;
    double q = 2.0e-4;
    double d = 0.0192;
    double rho = 0.5;

    // Spatial grid (pde_split, analyze).
    double length = 1.0;
    int cells = 100;
    BoundaryKind bc = BoundaryKind::neumann_homogeneous;

    // Stepping. dt == 0 and n_steps == 0 mean "pick a mode-appropriate default".
    double dt = 0.0;
    long n_steps = 0;
    long snapshot_every = 100;

    // Iteration scheme controls (ode_picard).
    double horizon = 0.0;  // 0 => min(existence horizon, 0.05)
    double dt_fine = 0.0;  // 0 => horizon / 1000
    double tol = 1.0e-10;
    long max_iter = 200;
    bool unsafe_horizon = false;

    InitialSpec initial;
    double margin = 1.0e-3;

    std::string output = "bzsolve_out.csv";
    std::string kernel = "auto";  // auto | scalar | avx2

    BZParams params() const { return BZParams(epsilon, q, d, rho); }
};

/// Applies one key=value pair (the same keys the config file accepts).
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Named parameter presets; currently only "bz_reference".
void apply_preset(RunConfig& cfg, std::string_view name);

/// Merges a config document (key = value lines, # comments, cosmetic
/// [section] lines) into cfg. Unknown and duplicate keys are errors.
void merge_config_text(RunConfig& cfg, std::string_view text);

/// Range/consistency checks shared by every entry point. For pde_split this
/// includes the explicit-diffusion stability bound on dt.
void validate_config(const RunConfig& cfg);

/// Parses a full document against defaults and validates it.
RunConfig parse_config(std::string_view text);

}  // namespace bzsolve
