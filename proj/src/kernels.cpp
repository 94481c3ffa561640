#include "levelcross/kernels.hpp"

#include <atomic>
#include <string>
#include <stdexcept>

namespace lcross::kernels {

namespace {

Backend detect() {
#if defined(LEVELCROSS_BUILD_AVX2)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Backend::avx2;
#endif
    return Backend::scalar;
}

std::atomic<Backend>& active_slot() {
    static std::atomic<Backend> slot{detect()};
    return slot;
}

}  // namespace

const char* backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool backend_supported(Backend b) {
    if (b == Backend::scalar) return true;
#if defined(LEVELCROSS_BUILD_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend active_backend() { return active_slot().load(std::memory_order_relaxed); }

void force_backend(Backend b) {
    if (!backend_supported(b))
        throw std::runtime_error(std::string("kernel backend not supported here: ") +
                                 backend_name(b));
    active_slot().store(b, std::memory_order_relaxed);
}

double sum_amp_cos(const double* amp, const double* freq, std::size_t n, double x, double phase) {
#if defined(LEVELCROSS_BUILD_AVX2)
    if (active_backend() == Backend::avx2)
        return detail::sum_amp_cos_avx2(amp, freq, n, x, phase);
#endif
    return detail::sum_amp_cos_scalar(amp, freq, n, x, phase);
}

double dot_abs_diff(const double* w, const double* k, std::size_t n, double k0) {
#if defined(LEVELCROSS_BUILD_AVX2)
    if (active_backend() == Backend::avx2) return detail::dot_abs_diff_avx2(w, k, n, k0);
#endif
    return detail::dot_abs_diff_scalar(w, k, n, k0);
}

}  // namespace lcross::kernels
