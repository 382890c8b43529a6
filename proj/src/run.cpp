#include "bzsolve/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "bzsolve/analysis.hpp"
#include "bzsolve/picard.hpp"
#include "bzsolve/semi_implicit.hpp"

namespace bzsolve {

namespace {

std::pair<double, double> span_minmax(std::span<const double> x) {
    double mn = x.front();
    double mx = x.front();
    for (double value : x) {
        mn = std::min(mn, value);
        mx = std::max(mx, value);
    }
    return {mn, mx};
}

std::string range_text(double lo, double hi) {
    return "[" + io::format_double(lo) + "," + io::format_double(hi) + "]";
}

void append_trajectory_ranges(std::ostringstream& os, const Trajectory& traj) {
    const std::size_t dim = traj.states.front().size();
    for (std::size_t i = 0; i < dim; ++i) {
        double mn = traj.states.front()[i];
        double mx = mn;
        for (const StateVec& s : traj.states) {
            mn = std::min(mn, s[i]);
            mx = std::max(mx, s[i]);
        }
        os << " u_" << (i + 1) << "=" << range_text(mn, mx);
    }
}

void write_output_file(const std::string& path, const Trajectory& traj) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot open output file '" + path + "'");
    io::write_trajectory_csv(out, traj);
}

StateVec constant_state(const RunConfig& cfg) {
    return {cfg.initial.const_u, cfg.initial.const_v};
}

double auto_picard_horizon(const ModelSpec& model, std::span<const double> a,
                           double requested) {
    if (requested > 0.0) return requested;
    if (max_norm(a) == 0.0) return 0.05;  // trajectory is frozen at 0; any window works
    const ExistenceEstimate est = existence_horizon(model, a);
    return std::min(est.t0, 0.05);
}

RunOutcome run_ode_de(const RunConfig& cfg) {
    const BZParams p = cfg.params();
    const ModelSpec model = bz_reaction_model(p);
    const StateVec a = constant_state(cfg);
    DEConfig dc;
    dc.dt = cfg.dt > 0.0 ? cfg.dt : 0.01;
    dc.n_steps = cfg.n_steps > 0 ? cfg.n_steps : 1000;

    const Trajectory traj = solve_de(model, a, dc);
    write_output_file(cfg.output, traj);

    double global_min = traj.states.front().front();
    for (const StateVec& s : traj.states) {
        for (double value : s) global_min = std::min(global_min, value);
    }

    std::ostringstream os;
    os << "mode=ode_de backend=" << kernels::backend_name(resolve_kernels(cfg.kernel).backend)
       << " h=" << io::format_double(p.h) << " dt=" << io::format_double(dc.dt)
       << " steps=" << dc.n_steps;
    append_trajectory_ranges(os, traj);
    os << " nonnegative=" << (global_min >= 0.0 ? "yes" : "no") << " output=" << cfg.output;
    return {kExitOk, os.str()};
}

RunOutcome run_ode_picard(const RunConfig& cfg) {
    const BZParams p = cfg.params();
    const ModelSpec model = bz_reaction_model(p);
    const StateVec a = constant_state(cfg);
    const double horizon = auto_picard_horizon(model, a, cfg.horizon);

    PicardOptions opts;
    opts.dt_fine = cfg.dt_fine;
    opts.tol = cfg.tol;
    opts.max_iter = static_cast<int>(cfg.max_iter);
    opts.unsafe_horizon = cfg.unsafe_horizon;

    const PicardResult result = solve_picard(model, a, horizon, opts);
    write_output_file(cfg.output, result.trajectory);

    std::ostringstream os;
    os << "mode=ode_picard backend="
       << kernels::backend_name(resolve_kernels(cfg.kernel).backend)
       << " h=" << io::format_double(p.h) << " horizon=" << io::format_double(horizon)
       << " dt_fine=" << io::format_double(result.trajectory.grid.dt_fine)
       << " sweeps=" << result.step_differences.size()
       << " converged=" << (result.converged ? "yes" : "no");
    if (!result.step_differences.empty()) {
        os << " last_delta=" << io::format_double(result.step_differences.back());
    }
    append_trajectory_ranges(os, result.trajectory);
    os << " output=" << cfg.output;
    return {result.converged ? kExitOk : kExitSolver, os.str()};
}

RunOutcome run_pde_split(const RunConfig& cfg) {
    const BZParams p = cfg.params();
    const Grid1D grid(cfg.length, cfg.cells, cfg.bc);
    const kernels::KernelTable& kt = resolve_kernels(cfg.kernel);
    const io::InitialField init = build_initial_field(cfg, grid);

    const double dt = cfg.dt > 0.0 ? cfg.dt : stability_limit(std::max(1.0, p.d), grid.dx());
    const long n_steps = cfg.n_steps > 0 ? cfg.n_steps : 10000;

    const SplittingRun run =
        run_splitting(p, grid, init.u, init.v, dt, n_steps, cfg.snapshot_every, kt);

    {
        std::ofstream out(cfg.output);
        if (!out) throw config_error("cannot open output file '" + cfg.output + "'");
        io::write_snapshots_csv(out, run.snapshots, grid);
    }

    double u_min = run.snapshots.front().u.front(), u_max = u_min;
    double v_min = run.snapshots.front().v.front(), v_max = v_min;
    for (const SplitState& s : run.snapshots) {
        auto [umn, umx] = span_minmax(s.u);
        auto [vmn, vmx] = span_minmax(s.v);
        u_min = std::min(u_min, umn);
        u_max = std::max(u_max, umx);
        v_min = std::min(v_min, vmn);
        v_max = std::max(v_max, vmx);
    }

    std::string verdict = "unverified";
    int exit_code = kExitOk;
    std::size_t n_violations = 0;
    if (run.region_preconditions_held) {
        const ViolationReport report =
            check_region(run.snapshots, Region::bz_invariant(p));
        n_violations = report.violations.size();
        verdict = report.empty() ? "pass" : "violated";
        if (!report.empty()) exit_code = kExitRegionViolated;
    }

    std::ostringstream os;
    os << "mode=pde_split backend=" << kernels::backend_name(kt.backend)
       << " h=" << io::format_double(p.h) << " dt=" << io::format_double(dt)
       << " steps=" << n_steps << " nodes=" << grid.node_count()
       << " u=" << range_text(u_min, u_max) << " v=" << range_text(v_min, v_max)
       << " region=" << verdict;
    if (n_violations > 0) os << " violations=" << n_violations;
    os << " output=" << cfg.output;
    return {exit_code, os.str()};
}

RunOutcome run_analyze(const RunConfig& cfg) {
    const BZParams p = cfg.params();
    const ModelSpec model = bz_reaction_model(p);
    const StateVec a = constant_state(cfg);
    const Grid1D grid(cfg.length, cfg.cells, cfg.bc);

    double m_f = 0.0, m_g = 0.0;
    double t0 = std::numeric_limits<double>::infinity();
    if (max_norm(a) > 0.0) {
        const ExistenceEstimate est = existence_horizon(model, a);
        m_f = est.m_f;
        m_g = est.m_g;
        t0 = est.t0;
    }

    std::ostringstream os;
    os << "mode=analyze h=" << io::format_double(p.h)
       << " ubar=" << io::format_double(ubar(p, 1e-12)) << " t0=" << io::format_double(t0)
       << " m_f=" << io::format_double(m_f) << " m_g=" << io::format_double(m_g)
       << " stability_limit="
       << io::format_double(stability_limit(std::max(1.0, p.d), grid.dx()))
       << " dx=" << io::format_double(grid.dx());
    return {kExitOk, os.str()};
}

}  // namespace

const kernels::KernelTable& resolve_kernels(const std::string& name) {
    if (name == "auto") return kernels::active();
    const auto backend = kernels::backend_from_name(name);
    if (!backend) throw config_error("unknown kernel backend '" + name + "'");
    if (!kernels::backend_supported(*backend)) {
        throw config_error("kernel backend '" + name + "' is not supported on this host");
    }
    return kernels::table_for(*backend);
}

io::InitialField build_initial_field(const RunConfig& cfg, const Grid1D& grid) {
    const std::size_t n = grid.node_count();
    const double lo = cfg.q + cfg.margin;
    const double hi = 1.0 - cfg.margin;
    io::InitialField field;

    switch (cfg.initial.kind) {
        case InitialSpec::Kind::constant: {
            field.u.assign(n, cfg.initial.const_u);
            field.v.assign(n, cfg.initial.const_v);
            return field;
        }
        case InitialSpec::Kind::bump: {
            const double c = cfg.initial.center;
            const double w = cfg.initial.width;
            const double amp = cfg.initial.amplitude;
            const auto profile = [c, w, amp](double x) {
                const double r = (x - c) / w;
                return amp * std::exp(-r * r);
            };
            Field1D raw = cell_average(profile, grid);
            for (double& value : raw) value = std::clamp(value, lo, hi);
            field.u = raw;
            field.v = std::move(raw);
            return field;
        }
        case InitialSpec::Kind::random_uniform: {
            // Values are derived from the raw engine words (53-bit mantissas)
            // rather than std::uniform_real_distribution so that a seed pins
            // the field exactly across standard libraries.
            std::mt19937_64 eng(cfg.initial.seed);
            const auto draw = [&eng, lo, hi]() {
                const double unit = static_cast<double>(eng() >> 11) * 0x1.0p-53;
                return lo + (hi - lo) * unit;
            };
            field.u.resize(n);
            field.v.resize(n);
            for (double& value : field.u) value = draw();
            for (double& value : field.v) value = draw();
            return field;
        }
        case InitialSpec::Kind::csv: {
            std::ifstream in(cfg.initial.path);
            if (!in) {
                throw config_error("cannot open initial-field file '" + cfg.initial.path + "'");
            }
            field = io::read_initial_field_csv(in);
            if (field.u.size() != n) {
                throw config_error("initial-field file has " + std::to_string(field.u.size()) +
                                   " nodes but the grid has " + std::to_string(n));
            }
            return field;
        }
    }
    throw config_error("unhandled initial kind");
}

RunOutcome execute_run(const RunConfig& cfg) {
    validate_config(cfg);
    switch (cfg.mode) {
        case RunMode::ode_de: return run_ode_de(cfg);
        case RunMode::ode_picard: return run_ode_picard(cfg);
        case RunMode::pde_split: return run_pde_split(cfg);
        case RunMode::analyze: return run_analyze(cfg);
    }
    throw config_error("unhandled run mode");
}

}  // namespace bzsolve
