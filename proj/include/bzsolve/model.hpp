#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace bzsolve {

/// State of an m-component system; concentrations are dimensionless.
using StateVec = std::vector<double>;

/// The problem data of u' = -F(u) u + g(u): componentwise nonnegative decay
/// rates f_i and sources g_i.  Each evaluator receives the full state (every
/// f_i, g_i may depend on all components) and writes m values into `out`.
/// Evaluators must be deterministic: same state, bitwise-same output.
struct ModelSpec {
    int dim = 0;
    std::function<void(std::span<const double> state, std::span<double> out)> decay;
    std::function<void(std::span<const double> state, std::span<double> out)> source;
    /// Optional Lipschitz bound; absent means downstream estimators sample.
    std::optional<double> lipschitz_hint;
};

/// Constants of the Keener-Tyson BZ reaction term.  h is stored redundantly
/// and recomputed as rho/epsilon at construction so tests get a bit-stable
/// value.
struct BZParams {
    double epsilon;
    double q;
    double d;
    double rho;
    double h;

    /// Validates 0 < q < 1, epsilon > 0, d >= 0, rho > 0 and sets h = rho/epsilon.
    BZParams(double epsilon, double q, double d, double rho);
};

/// Reference constants for the BZ reaction: epsilon = 0.032, q = 2e-4,
/// d = 0.6*epsilon = 0.0192, rho = 0.5 (so h = 15.625).
BZParams bz_reference_params();

/// max_i |v_i|.  Throws std::invalid_argument on an empty vector.
double max_norm(std::span<const double> v);

/// Two-component ModelSpec for the uniform-in-space BZ reaction, state (u, v):
///   f_1 = u/eps + h v/(u+q),  g_1 = u/eps + h q v/(u+q),
///   f_2 = 1,                  g_2 = u.
/// Evaluating at a state with u + q <= 0 throws std::domain_error; such
/// states are unreachable under the shipped schemes, so reaching one is a bug
/// to surface, never to clamp.
ModelSpec bz_reaction_model(const BZParams& p);

/// Componentwise -f_i(s) s_i + g_i(s).
StateVec evaluate_rhs(const ModelSpec& model, std::span<const double> s);

}  // namespace bzsolve
