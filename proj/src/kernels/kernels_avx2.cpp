// AVX2 variants of the likelihood kernels. This translation unit is compiled
// with -mavx2 -mfma and must only be entered after the runtime CPU check in
// dispatch.cpp.

#include "lptn/kernels.hpp"
#include "lptn/math.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace lptn::kern {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void residuals_avx2(const double* x, std::size_t n, std::size_t p, std::size_t ld,
                    const double* beta, const double* y, double* r) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(r + i, _mm256_loadu_pd(y + i));
    for (; i < n; ++i) r[i] = y[i];

    for (std::size_t j = 0; j < p; ++j) {
        const double* col = x + j * ld;
        const __m256d bj = _mm256_set1_pd(beta[j]);
        std::size_t k = 0;
        for (; k + 4 <= n; k += 4) {
            __m256d acc = _mm256_loadu_pd(r + k);
            acc = _mm256_fnmadd_pd(bj, _mm256_loadu_pd(col + k), acc);
            _mm256_storeu_pd(r + k, acc);
        }
        for (; k < n; ++k) r[k] -= beta[j] * col[k];
    }
}

double sum_sq_avx2(const double* r, std::size_t n, double scale) {
    const __m256d s = _mm256_set1_pd(scale);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d z = _mm256_mul_pd(_mm256_loadu_pd(r + i), s);
        acc = _mm256_fmadd_pd(z, z, acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i) {
        double z = r[i] * scale;
        total += z * z;
    }
    return total;
}

double normal_log_sum_avx2(const double* r, std::size_t n, double inv_sigma) {
    return -0.5 * sum_sq_avx2(r, n, inv_sigma) - static_cast<double>(n) * half_log_two_pi;
}

inline double lptn_tail_term(double az, const LptnParams& p) {
    double log_az = std::log(az);
    return p.log_phi_tau + p.log_tau - log_az +
           (p.lambda + 1.0) * (p.log_log_tau - std::log(log_az));
}

// Central lanes accumulate -z^2/2 vectorized; tail lanes (|z| > tau) are rare
// and handled scalar via movemask extraction.
double lptn_log_sum_avx2(const double* r, std::size_t n, double inv_sigma,
                         const LptnParams& p) {
    const __m256d s = _mm256_set1_pd(inv_sigma);
    const __m256d tau = _mm256_set1_pd(p.tau);
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d zz_acc = _mm256_setzero_pd();
    std::size_t central = 0;
    double tail_acc = 0.0;

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d z = _mm256_mul_pd(_mm256_loadu_pd(r + i), s);
        __m256d az = _mm256_andnot_pd(sign_mask, z);
        __m256d is_central = _mm256_cmp_pd(az, tau, _CMP_LE_OQ);
        int tail_bits = _mm256_movemask_pd(is_central) ^ 0xF;
        zz_acc = _mm256_fmadd_pd(_mm256_and_pd(z, is_central), _mm256_and_pd(z, is_central),
                                 zz_acc);
        if (tail_bits == 0) {
            central += 4;
        } else {
            alignas(32) double lanes[4];
            _mm256_store_pd(lanes, az);
            for (int b = 0; b < 4; ++b) {
                if (tail_bits & (1 << b))
                    tail_acc += lptn_tail_term(lanes[b], p);
                else
                    ++central;
            }
        }
    }
    double total = -0.5 * hsum(zz_acc);
    for (; i < n; ++i) {
        double z = r[i] * inv_sigma;
        double az = std::fabs(z);
        if (az <= p.tau) {
            total += -0.5 * z * z;
            ++central;
        } else {
            tail_acc += lptn_tail_term(az, p);
        }
    }
    return total - static_cast<double>(central) * half_log_two_pi + tail_acc;
}

}  // namespace

const Kernels* avx2_kernels_impl() {
    static const Kernels k{"avx2", residuals_avx2, sum_sq_avx2, normal_log_sum_avx2,
                           lptn_log_sum_avx2};
    return &k;
}

}  // namespace lptn::kern

#else

namespace lptn::kern {
const Kernels* avx2_kernels_impl() { return nullptr; }
}  // namespace lptn::kern

#endif
