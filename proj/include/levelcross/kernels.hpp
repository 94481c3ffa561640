#pragma once

#include <cstddef>

// Data-parallel inner loops of the orbit sums. Each kernel has a scalar
// reference implementation and an AVX2 variant; the active one is picked
// at runtime from CPU capabilities. Both accumulate with Neumaier
// compensation, so results are summation-order stable to ~1 ulp per term
// and the two variants agree to the accuracy of the vector cosine.

namespace lcross::kernels {

enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);
bool backend_supported(Backend b);

// The backend chosen at startup (avx2 when the CPU supports it).
Backend active_backend();

// Overrides the active backend; throws std::runtime_error if the
// requested backend is not supported on this machine. Intended for the
// equivalence tests and benchmarks.
void force_backend(Backend b);

// sum_i amp[i] * cos(freq[i] * x + phase)
double sum_amp_cos(const double* amp, const double* freq, std::size_t n, double x, double phase);

// sum_i w[i] * |k[i] - k0|
double dot_abs_diff(const double* w, const double* k, std::size_t n, double k0);

namespace detail {
double sum_amp_cos_scalar(const double* amp, const double* freq, std::size_t n, double x,
                          double phase);
double dot_abs_diff_scalar(const double* w, const double* k, std::size_t n, double k0);
#if defined(LEVELCROSS_BUILD_AVX2)
double sum_amp_cos_avx2(const double* amp, const double* freq, std::size_t n, double x,
                        double phase);
double dot_abs_diff_avx2(const double* w, const double* k, std::size_t n, double k0);
#endif
}  // namespace detail

}  // namespace lcross::kernels
