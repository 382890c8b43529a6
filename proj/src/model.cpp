#include "bzsolve/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bzsolve/detail/scalar_forms.hpp"

namespace bzsolve {

BZParams::BZParams(double epsilon_, double q_, double d_, double rho_)
    : epsilon(epsilon_), q(q_), d(d_), rho(rho_), h(rho_ / epsilon_) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("BZParams: epsilon must be > 0");
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("BZParams: q must lie in (0, 1)");
    if (!(d >= 0.0)) throw std::invalid_argument("BZParams: d must be >= 0");
    if (!(rho > 0.0)) throw std::invalid_argument("BZParams: rho must be > 0");
}

BZParams bz_reference_params() { return BZParams(0.032, 2.0e-4, 0.0192, 0.5); }

double max_norm(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("max_norm: empty vector");
    double m = 0.0;
    for (double x : v) {
        const double a = std::abs(x);
        if (a > m) m = a;
    }
    return m;
}

ModelSpec bz_reaction_model(const BZParams& p) {
    const double eps = p.epsilon;
    const double q = p.q;
    const double h = p.h;

    auto check_domain = [q](std::span<const double> s) {
        if (s.size() != 2) throw std::invalid_argument("bz model: state must have 2 components");
        if (!(s[0] + q > 0.0)) {
            throw std::domain_error("bz model: u + q <= 0 (u = " + std::to_string(s[0]) + ")");
        }
    };

    ModelSpec spec;
    spec.dim = 2;
    spec.decay = [=](std::span<const double> s, std::span<double> out) {
        check_domain(s);
        out[0] = detail::bz_f1(s[0], s[1], eps, q, h);
        out[1] = 1.0;
    };
    spec.source = [=](std::span<const double> s, std::span<double> out) {
        check_domain(s);
        out[0] = detail::bz_g1(s[0], s[1], eps, q, h);
        out[1] = s[0];
    };
    return spec;
}

StateVec evaluate_rhs(const ModelSpec& model, std::span<const double> s) {
    if (static_cast<int>(s.size()) != model.dim) {
        throw std::invalid_argument("evaluate_rhs: state dimension mismatch");
    }
    StateVec f(model.dim), g(model.dim), out(model.dim);
    model.decay(s, f);
    model.source(s, g);
    for (int i = 0; i < model.dim; ++i) {
        out[i] = g[i] - f[i] * s[i];
    }
    return out;
}

}  // namespace bzsolve
