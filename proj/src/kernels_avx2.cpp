#include "nwm/kernels_table.hpp"

// AVX2+FMA variants of the arithmetic kernels. This file is compiled with
// -mavx2 -mfma on x86-64 and must only be reached through the runtime
// dispatch in kernels.cpp, which checks CPU support first.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace nwm::kernels {
namespace {

double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s2 = _mm_add_pd(lo, hi);
    const __m128d s1 = _mm_add_sd(s2, _mm_unpackhi_pd(s2, s2));
    return _mm_cvtsd_f64(s1);
}

double avx2_dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void avx2_axpy(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void avx2_xpby(const double* x, double b, double* y, std::size_t n) {
    const __m256d vb = _mm256_set1_pd(b);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vy = _mm256_fmadd_pd(vb, _mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] = x[i] + b * y[i];
}

void avx2_hadamard(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

double avx2_sum_sq_diff(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
        acc0 = _mm256_fmadd_pd(d0, d0, acc0);
        acc1 = _mm256_fmadd_pd(d1, d1, acc1);
    }
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc0 = _mm256_fmadd_pd(d, d, acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void avx2_csr_matvec(int rows, const int* row_ptr, const std::int32_t* col_idx,
                     const double* values, const double* x, double* y) {
    for (int r = 0; r < rows; ++r) {
        const int begin = row_ptr[r];
        const int end = row_ptr[r + 1];
        __m256d acc = _mm256_setzero_pd();
        int k = begin;
        for (; k + 4 <= end; k += 4) {
            const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(col_idx + k));
            const __m256d xv = _mm256_i32gather_pd(x, idx, 8);
            acc = _mm256_fmadd_pd(_mm256_loadu_pd(values + k), xv, acc);
        }
        double sum = hsum(acc);
        for (; k < end; ++k) sum += values[k] * x[col_idx[k]];
        y[r] = sum;
    }
}

const KernelTable kAvx2Table = {
    avx2_dot, avx2_axpy, avx2_xpby, avx2_hadamard,
    avx2_sum_sq_diff, avx2_csr_matvec,
};

bool cpu_supports_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

}  // namespace

namespace detail {

const KernelTable* avx2_table() {
    static const KernelTable* table = cpu_supports_avx2() ? &kAvx2Table : nullptr;
    return table;
}

}  // namespace detail
}  // namespace nwm::kernels

#else  // non-x86 build: no AVX2 variant

namespace nwm::kernels::detail {

const KernelTable* avx2_table() { return nullptr; }

}  // namespace nwm::kernels::detail

#endif
