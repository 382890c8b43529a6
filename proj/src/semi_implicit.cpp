#include "bzsolve/semi_implicit.hpp"

#include <stdexcept>
#include <string>

#include "bzsolve/detail/scalar_forms.hpp"

namespace bzsolve {

StateVec de_step(const ModelSpec& model, std::span<const double> u, double dt) {
    if (static_cast<int>(u.size()) != model.dim) {
        throw std::invalid_argument("de_step: state dimension mismatch");
    }
    if (!(dt > 0.0)) throw std::invalid_argument("de_step: dt must be > 0");
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!(u[i] >= 0.0)) {
            throw std::invalid_argument("de_step: component " + std::to_string(i) +
                                        " is negative (" + std::to_string(u[i]) + ")");
        }
    }
    StateVec f(model.dim), g(model.dim), out(model.dim);
    model.decay(u, f);
    model.source(u, g);
    for (int i = 0; i < model.dim; ++i) {
        out[i] = detail::semi_implicit_update(u[i], f[i], g[i], dt);
    }
    return out;
}

Trajectory solve_de(const ModelSpec& model, std::span<const double> a, const DEConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("solve_de: dt must be > 0");
    if (cfg.n_steps < 1) throw std::invalid_argument("solve_de: n_steps must be >= 1");

    Trajectory traj;
    traj.grid = TimeGrid(cfg.dt, static_cast<std::size_t>(cfg.n_steps) + 1);
    traj.states.reserve(traj.grid.n_nodes);
    traj.states.emplace_back(a.begin(), a.end());
    for (long k = 0; k < cfg.n_steps; ++k) {
        traj.states.push_back(de_step(model, traj.states.back(), cfg.dt));
    }
    return traj;
}

}  // namespace bzsolve
