// AArch64 NEON kernels (two doubles per lane group).

#include "kernel_table.hpp"

#if !defined(ESAC_NO_SIMD) && defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

namespace esac::kernels::detail {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    if (i + 2 <= n) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        i += 2;
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

double sum_neon(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = vaddq_f64(acc, vld1q_f64(x + i));
    }
    double total = vaddvq_f64(acc);
    for (; i < n; ++i) {
        total += x[i];
    }
    return total;
}

void gemv_neon(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
    for (std::size_t i = 0; i < rows; ++i) {
        y[i] = dot_neon(a + i * cols, x, cols);
    }
}

void scale_rows_neon(const double* s, const double* a, std::size_t rows, std::size_t cols,
                     double* out) {
    for (std::size_t i = 0; i < rows; ++i) {
        const double si = s[i];
        const double* row = a + i * cols;
        double* dst = out + i * cols;
        std::size_t j = 0;
        for (; j + 2 <= cols; j += 2) {
            vst1q_f64(dst + j, vmulq_n_f64(vld1q_f64(row + j), si));
        }
        for (; j < cols; ++j) {
            dst[j] = si * row[j];
        }
    }
}

void scale_neon(double* x, std::size_t n, double s) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(x + i, vmulq_n_f64(vld1q_f64(x + i), s));
    }
    for (; i < n; ++i) {
        x[i] *= s;
    }
}

void accumulate_neon(double* dst, const double* src, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(dst + i, vaddq_f64(vld1q_f64(dst + i), vld1q_f64(src + i)));
    }
    for (; i < n; ++i) {
        dst[i] += src[i];
    }
}

double max_abs_diff_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t m = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        // FMAXNM ignores a quiet NaN operand, matching std::max(m, NaN) == m.
        m = vmaxnmq_f64(m, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    }
    double out = std::max(vgetq_lane_f64(m, 0), vgetq_lane_f64(m, 1));
    for (; i < n; ++i) {
        out = std::max(out, std::abs(a[i] - b[i]));
    }
    return out;
}

constexpr KernelTable kNeon{
    dot_neon,   sum_neon,        gemv_neon,         scale_rows_neon,
    scale_neon, accumulate_neon, max_abs_diff_neon,
};

} // namespace

const KernelTable* neon_table() noexcept { return &kNeon; }

} // namespace esac::kernels::detail

#else

namespace esac::kernels::detail {
const KernelTable* neon_table() noexcept { return nullptr; }
} // namespace esac::kernels::detail

#endif
