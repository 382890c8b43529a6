#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

namespace bzsolve::kernels {

enum class Backend { scalar, avx2 };

/// Data-parallel inner loops shared by the field solvers.  Every entry has a
/// scalar reference implementation and, on x86-64, an AVX2 variant that
/// performs the same IEEE operations in the same order, so the two backends
/// produce bitwise-identical output (equivalence-tested).
struct KernelTable {
    Backend backend;

    /// FTCS update on interior nodes 1..n-2: out[j] = f[j] + lam*lap(f, j).
    /// Boundary nodes are the caller's responsibility.
    void (*ftcs_interior)(const double* f, double* out, std::size_t n, double lam);

    /// Nodewise semi-implicit BZ reaction update on n nodes.  Inputs must
    /// satisfy u[j] + q > 0; the caller checks.
    void (*bz_reaction)(const double* u, const double* v, double* u_out, double* v_out,
                        std::size_t n, double eps, double q, double h, double dt);

    /// Min and max of x[0..n); n >= 1.
    void (*minmax)(const double* x, std::size_t n, double* mn, double* mx);

    /// True iff lo < x[j] < hi for every j (strict, NaN fails).
    bool (*all_inside_open)(const double* x, std::size_t n, double lo, double hi);
};

/// Does the running CPU support this backend?
bool backend_supported(Backend backend);

/// Kernel table for an explicitly requested backend; throws std::runtime_error
/// if the CPU does not support it.
const KernelTable& table_for(Backend backend);

/// Best supported backend, probed once per process.
const KernelTable& active();

std::string_view backend_name(Backend backend);
std::optional<Backend> backend_from_name(std::string_view name);

namespace detail {
extern const KernelTable scalar_table;
#if defined(__x86_64__) || defined(_M_X64)
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace bzsolve::kernels
