#pragma once

// Single source of truth for the scalar expression trees used by both the
// model evaluators and the kernel backends.  The SIMD kernels mirror these
// operation for operation; keeping one definition here is what makes the
// nodewise reaction update bitwise-equal to de_step on the same data.

namespace bzsolve::detail {

// Decay rate of the u component: u/eps + h*v/(u+q).
inline double bz_f1(double u, double v, double eps, double q, double h) {
    return u / eps + h * v / (u + q);
}

// Source of the u component: u/eps + h*q*v/(u+q).
inline double bz_g1(double u, double v, double eps, double q, double h) {
    return u / eps + h * q * v / (u + q);
}

// Semi-implicit update (x + g*dt) / (1 + f*dt).  Denominator >= 1 whenever
// f >= 0 and dt > 0, so the quotient is always well defined.
inline double semi_implicit_update(double x, double f, double g, double dt) {
    return (x + g * dt) / (1.0 + f * dt);
}

// One FTCS node: mid + lam * laplacian, association pinned.
inline double ftcs_node(double left, double mid, double right, double lam) {
    return mid + lam * ((right - 2.0 * mid) + left);
}

}  // namespace bzsolve::detail
