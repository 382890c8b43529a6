#include "bzsolve/kernels.hpp"

#include "bzsolve/detail/scalar_forms.hpp"

namespace bzsolve::kernels {
namespace {

void ftcs_interior_scalar(const double* f, double* out, std::size_t n, double lam) {
    for (std::size_t j = 1; j + 1 < n; ++j) {
        out[j] = bzsolve::detail::ftcs_node(f[j - 1], f[j], f[j + 1], lam);
    }
}

void bz_reaction_scalar(const double* u, const double* v, double* u_out, double* v_out,
                        std::size_t n, double eps, double q, double h, double dt) {
    using bzsolve::detail::bz_f1;
    using bzsolve::detail::bz_g1;
    using bzsolve::detail::semi_implicit_update;
    for (std::size_t j = 0; j < n; ++j) {
        const double uj = u[j];
        const double vj = v[j];
        u_out[j] = semi_implicit_update(uj, bz_f1(uj, vj, eps, q, h), bz_g1(uj, vj, eps, q, h), dt);
        v_out[j] = semi_implicit_update(vj, 1.0, uj, dt);
    }
}

void minmax_scalar(const double* x, std::size_t n, double* mn, double* mx) {
    double lo = x[0];
    double hi = x[0];
    for (std::size_t j = 1; j < n; ++j) {
        if (x[j] < lo) lo = x[j];
        if (x[j] > hi) hi = x[j];
    }
    *mn = lo;
    *mx = hi;
}

bool all_inside_open_scalar(const double* x, std::size_t n, double lo, double hi) {
    for (std::size_t j = 0; j < n; ++j) {
        if (!(x[j] > lo && x[j] < hi)) return false;
    }
    return true;
}

}  // namespace

namespace detail {
const KernelTable scalar_table = {
    Backend::scalar,
    &ftcs_interior_scalar,
    &bz_reaction_scalar,
    &minmax_scalar,
    &all_inside_open_scalar,
};
}  // namespace detail

}  // namespace bzsolve::kernels
