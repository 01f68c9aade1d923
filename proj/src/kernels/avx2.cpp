// AVX2 + FMA kernels. This translation unit is the only one built with
// -mavx2 -mfma; it must not include headers whose inline functions could be
// instantiated here and leak AVX code into the rest of the program.

#include "kernel_table.hpp"

#if !defined(ESAC_NO_SIMD) && defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace esac::kernels::detail {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    if (i + 4 <= n) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        i += 4;
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

double sum_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    }
    double total = hsum(acc);
    for (; i < n; ++i) {
        total += x[i];
    }
    return total;
}

void gemv_avx2(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
    for (std::size_t i = 0; i < rows; ++i) {
        y[i] = dot_avx2(a + i * cols, x, cols);
    }
}

void scale_rows_avx2(const double* s, const double* a, std::size_t rows, std::size_t cols,
                     double* out) {
    for (std::size_t i = 0; i < rows; ++i) {
        const double si = s[i];
        const __m256d sv = _mm256_set1_pd(si);
        const double* row = a + i * cols;
        double* dst = out + i * cols;
        std::size_t j = 0;
        for (; j + 4 <= cols; j += 4) {
            _mm256_storeu_pd(dst + j, _mm256_mul_pd(sv, _mm256_loadu_pd(row + j)));
        }
        for (; j < cols; ++j) {
            dst[j] = si * row[j];
        }
    }
}

void scale_avx2(double* x, std::size_t n, double s) {
    const __m256d sv = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), sv));
    }
    for (; i < n; ++i) {
        x[i] *= s;
    }
}

void accumulate_avx2(double* dst, const double* src, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(dst + i), _mm256_loadu_pd(src + i)));
    }
    for (; i < n; ++i) {
        dst[i] += src[i];
    }
}

double max_abs_diff_avx2(const double* a, const double* b, std::size_t n) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        // MAXPD returns the second operand on NaN; keep the running max there
        // so NaN lanes are skipped the same way std::max skips them.
        m = _mm256_max_pd(_mm256_andnot_pd(sign, d), m);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, m);
    double out = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) {
        out = std::max(out, std::abs(a[i] - b[i]));
    }
    return out;
}

constexpr KernelTable kAvx2{
    dot_avx2,   sum_avx2,        gemv_avx2,         scale_rows_avx2,
    scale_avx2, accumulate_avx2, max_abs_diff_avx2,
};

} // namespace

const KernelTable* avx2_table() noexcept { return &kAvx2; }

} // namespace esac::kernels::detail

#else

namespace esac::kernels::detail {
const KernelTable* avx2_table() noexcept { return nullptr; }
} // namespace esac::kernels::detail

#endif
