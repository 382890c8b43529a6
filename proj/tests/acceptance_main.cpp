// Acceptance gate: nine numbered checks, one PASS/FAIL line each.
//
//   acceptance        runs all nine
//   acceptance <n>    runs only check n (1..9)
//
// Exit code 0 iff every executed check passes.  Tolerances are pinned as
// constants next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bzsolve/analysis.hpp"
#include "bzsolve/csv.hpp"
#include "bzsolve/detail/scalar_forms.hpp"
#include "bzsolve/model.hpp"
#include "bzsolve/picard.hpp"
#include "bzsolve/run.hpp"
#include "bzsolve/semi_implicit.hpp"
#include "bzsolve/splitting.hpp"
#include "test_support.hpp"

using namespace bzsolve;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// 1. Unconditional positivity of the semi-implicit step: randomized models
//    with nonnegative coefficients, random nonnegative states, dt spanning
//    twelve orders of magnitude.
Outcome check_positivity() {
    constexpr int kTrials = 10000;
    constexpr double kBudgetSeconds = 5.0;
    const auto start = std::chrono::steady_clock::now();

    testsup::Rng rng(900101);
    long bad = 0;
    double dt_min_seen = 1e300, dt_max_seen = 0.0;

    for (int trial = 0; trial < kTrials; ++trial) {
        const int dim = 1 + rng.index(4);

        // Per component: either a nonnegative-coefficient polynomial
        //   c0 + c1 x_j + c2 x_i x_k
        // or a rational with positive denominator
        //   (c0 + c1 x_j) / (1 + c2 x_k).
        struct Term {
            bool rational;
            double c0, c1, c2;
            int j, k;
        };
        const auto make_terms = [&]() {
            std::vector<Term> terms(static_cast<std::size_t>(dim));
            for (Term& t : terms) {
                t.rational = rng.index(2) == 0;
                t.c0 = rng.uniform(0.0, 3.0);
                t.c1 = rng.uniform(0.0, 3.0);
                t.c2 = rng.uniform(0.0, 3.0);
                t.j = rng.index(dim);
                t.k = rng.index(dim);
            }
            return terms;
        };
        const auto eval = [](const std::vector<Term>& terms, std::span<const double> s,
                             std::span<double> out) {
            for (std::size_t i = 0; i < terms.size(); ++i) {
                const Term& t = terms[i];
                if (t.rational) {
                    out[i] = (t.c0 + t.c1 * s[static_cast<std::size_t>(t.j)]) /
                             (1.0 + t.c2 * s[static_cast<std::size_t>(t.k)]);
                } else {
                    out[i] = t.c0 + t.c1 * s[static_cast<std::size_t>(t.j)] +
                             t.c2 * s[i] * s[static_cast<std::size_t>(t.k)];
                }
            }
        };

        ModelSpec model;
        model.dim = dim;
        model.decay = [terms = make_terms(), eval](std::span<const double> s,
                                                   std::span<double> out) {
            eval(terms, s, out);
        };
        model.source = [terms = make_terms(), eval](std::span<const double> s,
                                                    std::span<double> out) {
            eval(terms, s, out);
        };

        StateVec u(static_cast<std::size_t>(dim));
        for (double& x : u) {
            x = rng.index(10) == 0 ? 0.0 : rng.log_uniform(1e-6, 1e3);
        }
        const double dt = rng.log_uniform(1e-6, 1e6);
        dt_min_seen = std::min(dt_min_seen, dt);
        dt_max_seen = std::max(dt_max_seen, dt);

        const StateVec out = de_step(model, u, dt);
        for (double x : out) {
            if (!(x >= 0.0) || !std::isfinite(x)) ++bad;
        }
    }

    const double secs = elapsed_seconds(start);
    std::ostringstream os;
    os << kTrials << " random (model, state, dt) trials, dt in [" << dt_min_seen << ", "
       << dt_max_seen << "]: " << bad << " negative/non-finite outputs in " << secs << "s";
    return {bad == 0 && secs < kBudgetSeconds, os.str()};
}

// ---------------------------------------------------------------------------
// Shared setup for checks 2 and 9: the headline field run.
RunConfig headline_config(BoundaryKind bc, const std::string& output) {
    RunConfig cfg;
    cfg.mode = RunMode::pde_split;
    cfg.length = 1.0;
    cfg.cells = 100;
    cfg.bc = bc;
    cfg.n_steps = 10000;
    cfg.snapshot_every = 100;
    cfg.initial = parse_initial_spec("random:7771");
    cfg.margin = 1e-3;
    cfg.output = output;
    const Grid1D grid(cfg.length, cfg.cells, bc);
    cfg.dt = 0.99 * stability_limit(std::max(1.0, cfg.d), grid.dx());
    return cfg;
}

// 2. Invariant region: 10^4 macro steps on a 100-cell grid under both
//    boundary conditions; every snapshot value must stay strictly inside
//    (q, 1) in both components.
Outcome check_invariant_region() {
    constexpr double kBudgetSecondsPerBc = 30.0;
    const BZParams p = bz_reference_params();
    std::ostringstream os;
    bool pass = true;

    for (BoundaryKind bc : {BoundaryKind::neumann_homogeneous, BoundaryKind::periodic}) {
        const auto start = std::chrono::steady_clock::now();
        const RunConfig cfg = headline_config(bc, "");
        const Grid1D grid(cfg.length, cfg.cells, bc);
        const io::InitialField init = build_initial_field(cfg, grid);
        const SplittingRun run = run_splitting(p, grid, init.u, init.v, cfg.dt,
                                               cfg.n_steps, cfg.snapshot_every);
        const ViolationReport report =
            check_region(run.snapshots, Region::bz_invariant(p));
        const double secs = elapsed_seconds(start);
        const bool ok = run.region_preconditions_held && report.empty() &&
                        secs < kBudgetSecondsPerBc;
        pass = pass && ok;
        os << (bc == BoundaryKind::neumann_homogeneous ? "neumann" : "periodic") << ": "
           << report.violations.size() << " violations over " << run.snapshots.size()
           << " snapshots (" << secs << "s)  ";
    }
    return {pass, os.str()};
}

// ---------------------------------------------------------------------------
// 3. Discrete maximum principle for lambda <= 1/2 on random fields, plus
//    sharpness: the same stencil with lambda just above 1/2 must leave the
//    input range on a checkerboard.
Outcome check_maximum_principle() {
    constexpr int kFields = 1000;
    constexpr double kBudgetSeconds = 5.0;
    const auto start = std::chrono::steady_clock::now();

    testsup::Rng rng(900303);
    long violations = 0;
    for (int trial = 0; trial < kFields; ++trial) {
        const BoundaryKind bc = trial % 2 == 0 ? BoundaryKind::periodic
                                               : BoundaryKind::neumann_homogeneous;
        const Grid1D grid(1.0, 3 + rng.index(40), bc);
        Field1D f(grid.node_count());
        double mn = 1e300, mx = -1e300;
        for (double& x : f) {
            x = rng.uniform(-4.0, 4.0);
            mn = std::min(mn, x);
            mx = std::max(mx, x);
        }
        const double lambda = rng.uniform(0.0, 0.5);
        const double dt = lambda * grid.dx() * grid.dx();
        if (dt <= 0.0) continue;
        for (double x : diffusion_substep(f, 1.0, dt, grid)) {
            if (x < mn || x > mx) ++violations;
        }
    }

    // Sharpness: lambda = 0.51 on an alternating field, evaluated through the
    // same stencil expression the solver uses (the production entry point
    // rejects it, which is the point of the guard).
    const double lambda_bad = 0.51;
    Field1D cb(16);
    for (std::size_t j = 0; j < cb.size(); ++j) cb[j] = j % 2 == 0 ? 0.0 : 1.0;
    bool out_of_range = false;
    for (std::size_t j = 0; j < cb.size(); ++j) {
        const double left = cb[(j + cb.size() - 1) % cb.size()];
        const double right = cb[(j + 1) % cb.size()];
        const double value = detail::ftcs_node(left, cb[j], right, lambda_bad);
        if (value < 0.0 || value > 1.0) out_of_range = true;
    }

    const double secs = elapsed_seconds(start);
    std::ostringstream os;
    os << kFields << " random fields with lambda <= 1/2: " << violations
       << " range violations; lambda = " << lambda_bad
       << " on a checkerboard leaves the range: " << (out_of_range ? "yes" : "no") << " ("
       << secs << "s)";
    return {violations == 0 && out_of_range && secs < kBudgetSeconds, os.str()};
}

// ---------------------------------------------------------------------------
// 4. First-order convergence of the semi-implicit scheme on u' = -u + 1.
Outcome check_de_convergence_order() {
    constexpr double kBudgetSeconds = 1.0;
    constexpr double kLo = 0.9, kHi = 1.1;
    const auto start = std::chrono::steady_clock::now();

    ModelSpec m;
    m.dim = 1;
    m.decay = [](std::span<const double>, std::span<double> out) { out[0] = 1.0; };
    m.source = [](std::span<const double>, std::span<double> out) { out[0] = 1.0; };

    std::vector<std::pair<double, double>> pairs;
    for (double dt : {0.1, 0.05, 0.025, 0.0125}) {
        const long steps = std::lround(1.0 / dt);
        const Trajectory traj = solve_de(m, StateVec{0.0}, DEConfig{dt, steps});
        pairs.emplace_back(dt,
                           std::abs(traj.states.back()[0] - (1.0 - std::exp(-1.0))));
    }
    const double order = convergence_order(pairs);
    const double secs = elapsed_seconds(start);

    std::ostringstream os;
    os << "fitted order " << order << " over dt in {0.1, 0.05, 0.025, 0.0125} (" << secs
       << "s)";
    return {order >= kLo && order <= kHi && secs < kBudgetSeconds, os.str()};
}

// ---------------------------------------------------------------------------
// 5. Cross-solver agreement: the successive-approximation solution and the
//    semi-implicit scheme at dt = 1e-6 must agree to 1e-4 on the whole
//    existence window, and the iteration's difference sequence must fall
//    monotonically past the second sweep.
Outcome check_cross_solver_agreement() {
    constexpr double kAgreeTol = 1e-4;
    constexpr double kBudgetSeconds = 60.0;
    const auto start = std::chrono::steady_clock::now();

    const BZParams p = bz_reference_params();
    const ModelSpec model = bz_reaction_model(p);
    const StateVec a{0.5, 0.5};
    const double horizon = std::min(existence_horizon(model, a).t0, 0.05);

    PicardOptions opts;
    opts.dt_fine = horizon / 4096.0;
    opts.tol = 1e-13;
    opts.max_iter = 20;
    const PicardResult pic = solve_picard(model, a, horizon, opts);

    const double de_dt = 1e-6;
    const long de_steps = static_cast<long>(horizon / de_dt);  // last node < horizon
    const Trajectory de = solve_de(model, a, DEConfig{de_dt, de_steps});

    // Compare at the semi-implicit nodes; evaluate the fine trajectory there
    // by linear interpolation (interpolation error ~ dt_fine^2, far below
    // the tolerance).
    double sup_diff = 0.0;
    const TimeGrid& fine = pic.trajectory.grid;
    for (long k = 0; k <= de_steps; ++k) {
        const double t = static_cast<double>(k) * de_dt;
        const double pos = t / fine.dt_fine;
        const std::size_t r0 =
            std::min(static_cast<std::size_t>(pos), fine.n_nodes - 2);
        const double w = pos - static_cast<double>(r0);
        for (int i = 0; i < 2; ++i) {
            const double interp =
                (1.0 - w) * pic.trajectory.states[r0][static_cast<std::size_t>(i)] +
                w * pic.trajectory.states[r0 + 1][static_cast<std::size_t>(i)];
            sup_diff = std::max(
                sup_diff,
                std::abs(interp -
                         de.states[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]));
        }
    }

    bool monotone = true;
    for (std::size_t l = 1; l + 1 < pic.step_differences.size(); ++l) {
        if (pic.step_differences[l + 1] > pic.step_differences[l]) monotone = false;
    }

    const double secs = elapsed_seconds(start);
    std::ostringstream os;
    os << "sup-norm gap " << sup_diff << " (tol " << kAgreeTol << ") over [0, " << horizon
       << "], " << pic.step_differences.size()
       << " sweeps, difference sequence monotone past sweep 2: "
       << (monotone ? "yes" : "no") << " (" << secs << "s)";
    return {pic.converged && sup_diff <= kAgreeTol && monotone && secs < kBudgetSeconds,
            os.str()};
}

// ---------------------------------------------------------------------------
// 6. Root diagnostics for the invariant-region cubic
//    phi(u) = u(1-u)(u+q) - eps h q (u-q).
Outcome check_ubar() {
    constexpr double kPresetTol = 1e-12;
    constexpr double kRandomTol = 1e-10;
    constexpr int kParamSets = 100;
    constexpr double kBudgetSeconds = 1.0;
    const auto start = std::chrono::steady_clock::now();

    const auto phi = [](double u, const BZParams& p) {
        return u * (1.0 - u) * (u + p.q) - p.epsilon * p.h * p.q * (u - p.q);
    };

    const BZParams preset = bz_reference_params();
    const double root = ubar(preset, kPresetTol);
    const bool preset_ok = root > preset.q && root < 1.0 && root > 0.99 &&
                           std::abs(phi(root, preset)) < kPresetTol;

    testsup::Rng rng(900606);
    int tested = 0;
    int good = 0;
    double worst = 0.0;
    for (int trial = 0; trial < kParamSets; ++trial) {
        const BZParams p(rng.log_uniform(1e-3, 1.0), rng.log_uniform(1e-6, 0.5), 0.0,
                         rng.uniform(0.1, 2.0));
        if (!(phi(p.q, p) > 0.0 && phi(1.0, p) < 0.0)) continue;
        ++tested;
        const double r = ubar(p, kRandomTol);
        const double res = std::abs(phi(r, p));
        worst = std::max(worst, res);
        if (r > p.q && r < 1.0 && res < kRandomTol) ++good;
    }

    const double secs = elapsed_seconds(start);
    std::ostringstream os;
    os << "preset root " << root << " (residual " << std::abs(phi(root, preset))
       << ", > 0.99: " << (root > 0.99 ? "yes" : "no") << "); " << good << "/" << tested
       << " random parameter sets within " << kRandomTol << " (worst " << worst << ", "
       << secs << "s)";
    return {preset_ok && tested > 0 && good == tested && secs < kBudgetSeconds, os.str()};
}

// ---------------------------------------------------------------------------
// 7. Splitting consistency: over a fixed window of eight coarsest macro
//    steps, the gap between the splitting at dt and the same composite at
//    dt/100 scales like dt^1.
Outcome check_splitting_order() {
    constexpr double kLo = 0.8, kHi = 1.2;
    constexpr double kBudgetSeconds = 10.0;
    const auto start = std::chrono::steady_clock::now();

    const BZParams p = bz_reference_params();
    const Grid1D grid(1.0, 100, BoundaryKind::neumann_homogeneous);
    const double limit = stability_limit(std::max(1.0, p.d), grid.dx());
    const double margin = 1e-3;

    Field1D u0(grid.node_count()), v0(grid.node_count(), 0.3);
    for (std::size_t j = 0; j < u0.size(); ++j) {
        const double x = grid.node(j);
        const double s = std::min(std::abs(x - 0.5) / 0.25, 1.0);
        u0[j] = p.q + margin +
                (1.0 - p.q - 2.0 * margin) * 0.5 * (1.0 + std::cos(std::numbers::pi * s));
    }

    const double window = 8.0 * limit;
    std::vector<std::pair<double, double>> pairs;
    for (double dt : {limit, limit / 2.0, limit / 4.0}) {
        const long n = std::lround(window / dt);
        const SplitState coarse =
            run_splitting(p, grid, u0, v0, dt, n, n).snapshots.back();
        const SplitState ref =
            run_splitting(p, grid, u0, v0, dt / 100.0, 100 * n, 100 * n).snapshots.back();
        double err = 0.0;
        for (std::size_t j = 0; j < coarse.u.size(); ++j) {
            err = std::max(err, std::abs(coarse.u[j] - ref.u[j]));
            err = std::max(err, std::abs(coarse.v[j] - ref.v[j]));
        }
        pairs.emplace_back(dt, err);
    }
    const double order = convergence_order(pairs);

    const double secs = elapsed_seconds(start);
    std::ostringstream os;
    os << "fitted order " << order << " from errors {" << pairs[0].second << ", "
       << pairs[1].second << ", " << pairs[2].second
       << "} at dt = {limit, limit/2, limit/4} against the dt/100 composite over a fixed "
          "window of 8 coarse steps ("
       << secs << "s)";
    return {order >= kLo && order <= kHi && secs < kBudgetSeconds, os.str()};
}

// ---------------------------------------------------------------------------
// 8. Counterexample exhibit: forward Euler leaves the nonnegative orthant at
//    a state and step size where the semi-implicit step stays inside (q,1)^2.
Outcome check_counterexample() {
    constexpr double kBudgetSeconds = 1.0;
    const auto start = std::chrono::steady_clock::now();

    const BZParams p = bz_reference_params();
    const ModelSpec model = bz_reaction_model(p);
    const std::pair<double, double> state{0.5, 0.999};

    double found_dt = 0.0;
    std::pair<double, double> euler{0.0, 0.0};
    for (double dt = 1.0; dt <= 1048576.0; dt *= 2.0) {
        euler = forward_euler_counterexample(p, state, dt);
        if (euler.first < 0.0 || euler.second < 0.0) {
            found_dt = dt;
            break;
        }
    }

    bool de_inside = false;
    StateVec de{0.0, 0.0};
    if (found_dt > 0.0) {
        de = de_step(model, StateVec{state.first, state.second}, found_dt);
        de_inside = de[0] > p.q && de[0] < 1.0 && de[1] > p.q && de[1] < 1.0;
    }

    const double secs = elapsed_seconds(start);
    std::ostringstream os;
    os << "state (0.5, 0.999), dt = " << found_dt << ": Euler -> (" << euler.first << ", "
       << euler.second << "), semi-implicit -> (" << de[0] << ", " << de[1]
       << ") inside (q,1)^2: " << (de_inside ? "yes" : "no") << " (" << secs << "s)";
    return {found_dt > 0.0 && de_inside && secs < kBudgetSeconds, os.str()};
}

// ---------------------------------------------------------------------------
// 9. Determinism and round-trip: the headline field run twice produces
//    byte-identical CSV, and reading it back reproduces the in-memory
//    snapshots bitwise.
Outcome check_determinism_roundtrip() {
    const auto start = std::chrono::steady_clock::now();

    const auto tmp = std::filesystem::temp_directory_path();
    const std::string out_a = (tmp / "acceptance_run_a.csv").string();
    const std::string out_b = (tmp / "acceptance_run_b.csv").string();

    const RunConfig cfg_a = headline_config(BoundaryKind::neumann_homogeneous, out_a);
    const RunConfig cfg_b = headline_config(BoundaryKind::neumann_homogeneous, out_b);
    const RunOutcome ra = execute_run(cfg_a);
    const RunOutcome rb = execute_run(cfg_b);

    const auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    };
    const std::string bytes_a = slurp(out_a);
    const std::string bytes_b = slurp(out_b);
    const bool identical = !bytes_a.empty() && bytes_a == bytes_b;

    // Independent in-memory rerun of the same configuration.
    const Grid1D grid(cfg_a.length, cfg_a.cells, cfg_a.bc);
    const io::InitialField init = build_initial_field(cfg_a, grid);
    const SplittingRun run = run_splitting(bz_reference_params(), grid, init.u, init.v,
                                           cfg_a.dt, cfg_a.n_steps, cfg_a.snapshot_every);

    std::ifstream in(out_a);
    const std::vector<SplitState> back = io::read_snapshots_csv(in);
    bool bitwise = back.size() == run.snapshots.size();
    if (bitwise) {
        for (std::size_t i = 0; i < back.size(); ++i) {
            if (back[i].step != run.snapshots[i].step ||
                back[i].time != run.snapshots[i].time ||
                back[i].u != run.snapshots[i].u || back[i].v != run.snapshots[i].v) {
                bitwise = false;
                break;
            }
        }
    }

    const double secs = elapsed_seconds(start);
    std::ostringstream os;
    os << "two runs: " << bytes_a.size() << " bytes each, byte-identical: "
       << (identical ? "yes" : "no") << "; read-back bitwise-equal over " << back.size()
       << " snapshots: " << (bitwise ? "yes" : "no") << " (" << secs << "s)";
    return {ra.exit_code == 0 && rb.exit_code == 0 && identical && bitwise, os.str()};
}

struct Check {
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Check> checks = {
        {"unconditional positivity of the semi-implicit step", check_positivity},
        {"invariant region over 10^4 macro steps, both BCs", check_invariant_region},
        {"discrete maximum principle and sharpness at lambda = 1/2",
         check_maximum_principle},
        {"first-order convergence of the semi-implicit scheme",
         check_de_convergence_order},
        {"cross-solver agreement on the existence window", check_cross_solver_agreement},
        {"root diagnostics for the region cubic", check_ubar},
        {"first-order consistency of the splitting", check_splitting_order},
        {"forward-Euler counterexample vs semi-implicit step", check_counterexample},
        {"determinism and CSV round-trip of the headline run",
         check_determinism_roundtrip},
    };

    int selected = 0;
    if (argc > 1) {
        selected = std::atoi(argv[1]);
        if (selected < 1 || selected > static_cast<int>(checks.size())) {
            std::cerr << "usage: " << argv[0] << " [1.." << checks.size() << "]\n";
            return 2;
        }
    }

    bool all_pass = true;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const int number = static_cast<int>(i) + 1;
        if (selected != 0 && number != selected) continue;
        Outcome outcome;
        try {
            outcome = checks[i].run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s  %d  %s — %s\n", outcome.pass ? "PASS" : "FAIL", number,
                    checks[i].name, outcome.detail.c_str());
        all_pass = all_pass && outcome.pass;
    }
    return all_pass ? 0 : 1;
}
