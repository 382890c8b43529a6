// AVX2 kernel variants.  Each loop mirrors the scalar reference in
// kernels_scalar.cpp operation for operation (same IEEE ops, same order,
// no FMA), so results are bitwise-identical to the scalar backend.
// This TU is compiled with -mavx2 and entered only after a cpuid probe.

#include <immintrin.h>

#include "bzsolve/detail/scalar_forms.hpp"
#include "bzsolve/kernels.hpp"

namespace bzsolve::kernels {
namespace {

void ftcs_interior_avx2(const double* f, double* out, std::size_t n, double lam) {
    const __m256d vlam = _mm256_set1_pd(lam);
    const __m256d vtwo = _mm256_set1_pd(2.0);
    std::size_t j = 1;
    for (; j + 4 + 1 <= n; j += 4) {
        const __m256d left = _mm256_loadu_pd(f + j - 1);
        const __m256d mid = _mm256_loadu_pd(f + j);
        const __m256d right = _mm256_loadu_pd(f + j + 1);
        const __m256d lap =
            _mm256_add_pd(_mm256_sub_pd(right, _mm256_mul_pd(vtwo, mid)), left);
        _mm256_storeu_pd(out + j, _mm256_add_pd(mid, _mm256_mul_pd(vlam, lap)));
    }
    for (; j + 1 < n; ++j) {
        out[j] = bzsolve::detail::ftcs_node(f[j - 1], f[j], f[j + 1], lam);
    }
}

void bz_reaction_avx2(const double* u, const double* v, double* u_out, double* v_out,
                      std::size_t n, double eps, double q, double h, double dt) {
    const __m256d veps = _mm256_set1_pd(eps);
    const __m256d vq = _mm256_set1_pd(q);
    const __m256d vh = _mm256_set1_pd(h);
    const __m256d vhq = _mm256_set1_pd(h * q);
    const __m256d vdt = _mm256_set1_pd(dt);
    const __m256d vone = _mm256_set1_pd(1.0);
    const __m256d vden_v = _mm256_set1_pd(1.0 + 1.0 * dt);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d uj = _mm256_loadu_pd(u + j);
        const __m256d vj = _mm256_loadu_pd(v + j);
        const __m256d u_eps = _mm256_div_pd(uj, veps);
        const __m256d uq = _mm256_add_pd(uj, vq);
        const __m256d f1 = _mm256_add_pd(u_eps, _mm256_div_pd(_mm256_mul_pd(vh, vj), uq));
        const __m256d g1 = _mm256_add_pd(u_eps, _mm256_div_pd(_mm256_mul_pd(vhq, vj), uq));
        const __m256d u_num = _mm256_add_pd(uj, _mm256_mul_pd(g1, vdt));
        const __m256d u_den = _mm256_add_pd(vone, _mm256_mul_pd(f1, vdt));
        _mm256_storeu_pd(u_out + j, _mm256_div_pd(u_num, u_den));
        const __m256d v_num = _mm256_add_pd(vj, _mm256_mul_pd(uj, vdt));
        _mm256_storeu_pd(v_out + j, _mm256_div_pd(v_num, vden_v));
    }
    using bzsolve::detail::bz_f1;
    using bzsolve::detail::bz_g1;
    using bzsolve::detail::semi_implicit_update;
    for (; j < n; ++j) {
        const double uj = u[j];
        const double vj = v[j];
        u_out[j] = semi_implicit_update(uj, bz_f1(uj, vj, eps, q, h), bz_g1(uj, vj, eps, q, h), dt);
        v_out[j] = semi_implicit_update(vj, 1.0, uj, dt);
    }
}

void minmax_avx2(const double* x, std::size_t n, double* mn, double* mx) {
    double lo = x[0];
    double hi = x[0];
    std::size_t j = 0;
    if (n >= 4) {
        __m256d vlo = _mm256_loadu_pd(x);
        __m256d vhi = vlo;
        for (j = 4; j + 4 <= n; j += 4) {
            const __m256d blk = _mm256_loadu_pd(x + j);
            vlo = _mm256_min_pd(vlo, blk);
            vhi = _mm256_max_pd(vhi, blk);
        }
        alignas(32) double tmp[4];
        _mm256_store_pd(tmp, vlo);
        lo = tmp[0];
        for (int k = 1; k < 4; ++k)
            if (tmp[k] < lo) lo = tmp[k];
        _mm256_store_pd(tmp, vhi);
        hi = tmp[0];
        for (int k = 1; k < 4; ++k)
            if (tmp[k] > hi) hi = tmp[k];
    }
    for (; j < n; ++j) {
        if (x[j] < lo) lo = x[j];
        if (x[j] > hi) hi = x[j];
    }
    *mn = lo;
    *mx = hi;
}

bool all_inside_open_avx2(const double* x, std::size_t n, double lo, double hi) {
    const __m256d vlo = _mm256_set1_pd(lo);
    const __m256d vhi = _mm256_set1_pd(hi);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d blk = _mm256_loadu_pd(x + j);
        const __m256d gt = _mm256_cmp_pd(blk, vlo, _CMP_GT_OQ);
        const __m256d lt = _mm256_cmp_pd(blk, vhi, _CMP_LT_OQ);
        if (_mm256_movemask_pd(_mm256_and_pd(gt, lt)) != 0xF) return false;
    }
    for (; j < n; ++j) {
        if (!(x[j] > lo && x[j] < hi)) return false;
    }
    return true;
}

}  // namespace

namespace detail {
const KernelTable avx2_table = {
    Backend::avx2,
    &ftcs_interior_avx2,
    &bz_reaction_avx2,
    &minmax_avx2,
    &all_inside_open_avx2,
};
}  // namespace detail

}  // namespace bzsolve::kernels
