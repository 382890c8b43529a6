#pragma once

#include <span>

#include "bzsolve/model.hpp"
#include "bzsolve/picard.hpp"

namespace bzsolve {

struct DEConfig {
    double dt = 0.0;     ///< step size; any positive value is admissible
    long n_steps = 0;
};

/// One step of the semi-implicit scheme in its explicit rewritten form,
///   u_i <- (u_i + g_i(u) dt) / (1 + f_i(u) dt).
/// The denominator is >= 1, so the step is division-safe and the output is
/// componentwise nonnegative for every dt > 0.  Negative input components are
/// rejected (std::invalid_argument); the scheme's nonnegativity induction
/// starts from nonnegative data.
StateVec de_step(const ModelSpec& model, std::span<const double> u, double dt);

/// Iterates de_step n_steps times from a; output nodes t_k = k dt
/// (n_steps + 1 states including the initial one).
Trajectory solve_de(const ModelSpec& model, std::span<const double> a, const DEConfig& cfg);

}  // namespace bzsolve
