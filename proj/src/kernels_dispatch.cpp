#include "bzsolve/kernels.hpp"

#include <stdexcept>
#include <string>

namespace bzsolve::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(BZSOLVE_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(_M_X64))
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

}  // namespace

bool backend_supported(Backend backend) {
    switch (backend) {
        case Backend::scalar: return true;
        case Backend::avx2: return cpu_has_avx2();
    }
    return false;
}

const KernelTable& table_for(Backend backend) {
    if (backend == Backend::scalar) return detail::scalar_table;
#if defined(BZSOLVE_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(_M_X64))
    if (backend == Backend::avx2) {
        if (!cpu_has_avx2()) {
            throw std::runtime_error("kernel backend 'avx2' not supported by this CPU");
        }
        return detail::avx2_table;
    }
#endif
    throw std::runtime_error("kernel backend '" + std::string(backend_name(backend)) +
                             "' not available in this build");
}

const KernelTable& active() {
    static const KernelTable& best =
        backend_supported(Backend::avx2) ? table_for(Backend::avx2) : detail::scalar_table;
    return best;
}

std::string_view backend_name(Backend backend) {
    switch (backend) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
    }
    return "unknown";
}

std::optional<Backend> backend_from_name(std::string_view name) {
    if (name == "scalar") return Backend::scalar;
    if (name == "avx2") return Backend::avx2;
    return std::nullopt;
}

}  // namespace bzsolve::kernels
