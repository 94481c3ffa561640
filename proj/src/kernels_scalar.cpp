#include <cmath>

#include "levelcross/kernels.hpp"

namespace lcross::kernels::detail {

namespace {

struct Neumaier {
    double sum = 0.0;
    double comp = 0.0;
    void add(double y) {
        const double t = sum + y;
        comp += std::abs(sum) >= std::abs(y) ? (sum - t) + y : (y - t) + sum;
        sum = t;
    }
    double get() const { return sum + comp; }
};

}  // namespace

double sum_amp_cos_scalar(const double* amp, const double* freq, std::size_t n, double x,
                          double phase) {
    Neumaier acc;
    for (std::size_t i = 0; i < n; ++i) acc.add(amp[i] * std::cos(freq[i] * x + phase));
    return acc.get();
}

double dot_abs_diff_scalar(const double* w, const double* k, std::size_t n, double k0) {
    Neumaier acc;
    for (std::size_t i = 0; i < n; ++i) acc.add(w[i] * std::abs(k[i] - k0));
    return acc.get();
}

}  // namespace lcross::kernels::detail
