#include <immintrin.h>

#include <cmath>

#include "levelcross/kernels.hpp"

// AVX2/FMA variants. The vector cosine uses a three-constant Cody-Waite
// reduction by pi/2 (exact for |quotient| < 2^20, far beyond the phases
// the orbit sums produce) and degree-7/8 Taylor kernels for sin/cos on
// [-pi/4, pi/4], good to a few ulp against libm.

namespace lcross::kernels::detail {

namespace {

constexpr double kTwoOverPi = 0x1.45f306dc9c883p-1;
constexpr double kPio2Hi = 1.57079632673412561417e+00;
constexpr double kPio2Mid = 6.07710050630396597660e-11;
constexpr double kPio2Lo = 2.02226624879595063154e-21;
constexpr double kRoundMagic = 6755399441055744.0;  // 1.5 * 2^52

inline __m256d poly_sin(__m256d z) {
    // r * (1 - z/3! + z^2/5! - ... - z^7/15!), z = r^2
    const __m256d c15 = _mm256_set1_pd(-7.647163731819816476e-13);
    const __m256d c13 = _mm256_set1_pd(1.605904383682161460e-10);
    const __m256d c11 = _mm256_set1_pd(-2.505210838544171878e-08);
    const __m256d c9 = _mm256_set1_pd(2.755731922398589065e-06);
    const __m256d c7 = _mm256_set1_pd(-1.984126984126984126e-04);
    const __m256d c5 = _mm256_set1_pd(8.333333333333333333e-03);
    const __m256d c3 = _mm256_set1_pd(-1.666666666666666666e-01);
    __m256d p = c15;
    p = _mm256_fmadd_pd(p, z, c13);
    p = _mm256_fmadd_pd(p, z, c11);
    p = _mm256_fmadd_pd(p, z, c9);
    p = _mm256_fmadd_pd(p, z, c7);
    p = _mm256_fmadd_pd(p, z, c5);
    p = _mm256_fmadd_pd(p, z, c3);
    return _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0));
}

inline __m256d poly_cos(__m256d z) {
    // 1 - z/2! + z^2/4! - ... + z^8/16!
    const __m256d c16 = _mm256_set1_pd(4.779477332387385297e-14);
    const __m256d c14 = _mm256_set1_pd(-1.147074559772972471e-11);
    const __m256d c12 = _mm256_set1_pd(2.087675698786809897e-09);
    const __m256d c10 = _mm256_set1_pd(-2.755731922398589065e-07);
    const __m256d c8 = _mm256_set1_pd(2.480158730158730159e-05);
    const __m256d c6 = _mm256_set1_pd(-1.388888888888888889e-03);
    const __m256d c4 = _mm256_set1_pd(4.166666666666666666e-02);
    const __m256d c2 = _mm256_set1_pd(-5.000000000000000000e-01);
    __m256d p = c16;
    p = _mm256_fmadd_pd(p, z, c14);
    p = _mm256_fmadd_pd(p, z, c12);
    p = _mm256_fmadd_pd(p, z, c10);
    p = _mm256_fmadd_pd(p, z, c8);
    p = _mm256_fmadd_pd(p, z, c6);
    p = _mm256_fmadd_pd(p, z, c4);
    p = _mm256_fmadd_pd(p, z, c2);
    return _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0));
}

inline __m256d vcos(__m256d x) {
    const __m256d q = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Hi), x);
    r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Mid), r);
    r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Lo), r);

    // low 64 bits of (q + magic) carry the integer quadrant
    const __m256i n =
        _mm256_castpd_si256(_mm256_add_pd(q, _mm256_set1_pd(kRoundMagic)));
    const __m256i one = _mm256_set1_epi64x(1);
    const __m256i two = _mm256_set1_epi64x(2);
    const __m256i swap = _mm256_cmpeq_epi64(_mm256_and_si256(n, one), one);
    const __m256i flip =
        _mm256_cmpeq_epi64(_mm256_and_si256(_mm256_add_epi64(n, one), two), two);

    const __m256d z = _mm256_mul_pd(r, r);
    const __m256d sinr = _mm256_mul_pd(poly_sin(z), r);
    const __m256d cosr = poly_cos(z);

    __m256d res = _mm256_blendv_pd(cosr, sinr, _mm256_castsi256_pd(swap));
    const __m256d sign_bit = _mm256_set1_pd(-0.0);
    const __m256d neg = _mm256_and_pd(_mm256_castsi256_pd(flip), sign_bit);
    return _mm256_xor_pd(res, neg);
}

struct Neumaier4 {
    __m256d sum = _mm256_setzero_pd();
    __m256d comp = _mm256_setzero_pd();
    inline void add(__m256d y) {
        const __m256d t = _mm256_add_pd(sum, y);
        const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffll));
        const __m256d big_sum =
            _mm256_cmp_pd(_mm256_and_pd(sum, abs_mask), _mm256_and_pd(y, abs_mask), _CMP_GE_OQ);
        const __m256d lost_a = _mm256_add_pd(_mm256_sub_pd(sum, t), y);
        const __m256d lost_b = _mm256_add_pd(_mm256_sub_pd(y, t), sum);
        comp = _mm256_add_pd(comp, _mm256_blendv_pd(lost_b, lost_a, big_sum));
        sum = t;
    }
    double get() const {
        alignas(32) double s[4], c[4];
        _mm256_store_pd(s, sum);
        _mm256_store_pd(c, comp);
        // fixed lane merge order keeps the result independent of call site
        double total = 0.0, comp_s = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double y = s[i] + c[i];
            const double t = total + y;
            comp_s += std::abs(total) >= std::abs(y) ? (total - t) + y : (y - t) + total;
            total = t;
        }
        return total + comp_s;
    }
};

}  // namespace

double sum_amp_cos_avx2(const double* amp, const double* freq, std::size_t n, double x,
                        double phase) {
    const std::size_t n4 = n & ~std::size_t(3);
    Neumaier4 acc;
    const __m256d vx = _mm256_set1_pd(x);
    const __m256d vphase = _mm256_set1_pd(phase);
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d f = _mm256_loadu_pd(freq + i);
        const __m256d a = _mm256_loadu_pd(amp + i);
        const __m256d arg = _mm256_fmadd_pd(f, vx, vphase);
        acc.add(_mm256_mul_pd(a, vcos(arg)));
    }
    double total = acc.get();
    if (n4 < n) {
        double tail = sum_amp_cos_scalar(amp + n4, freq + n4, n - n4, x, phase);
        total += tail;
    }
    return total;
}

double dot_abs_diff_avx2(const double* w, const double* k, std::size_t n, double k0) {
    const std::size_t n4 = n & ~std::size_t(3);
    Neumaier4 acc;
    const __m256d vk0 = _mm256_set1_pd(k0);
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffll));
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d d = _mm256_and_pd(_mm256_sub_pd(_mm256_loadu_pd(k + i), vk0), abs_mask);
        acc.add(_mm256_mul_pd(_mm256_loadu_pd(w + i), d));
    }
    double total = acc.get();
    if (n4 < n) total += dot_abs_diff_scalar(w + n4, k + n4, n - n4, k0);
    return total;
}

}  // namespace lcross::kernels::detail
