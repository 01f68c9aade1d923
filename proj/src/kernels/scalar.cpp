// Scalar reference kernels. Compiled without FMA contraction so the
// elementwise kernels stay bitwise comparable with the vector variants.

#include "kernel_table.hpp"

#include <algorithm>
#include <cmath>

namespace esac::kernels::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

double sum_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += x[i];
    }
    return acc;
}

void gemv_scalar(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
    for (std::size_t i = 0; i < rows; ++i) {
        y[i] = dot_scalar(a + i * cols, x, cols);
    }
}

void scale_rows_scalar(const double* s, const double* a, std::size_t rows, std::size_t cols,
                       double* out) {
    for (std::size_t i = 0; i < rows; ++i) {
        const double si = s[i];
        for (std::size_t j = 0; j < cols; ++j) {
            out[i * cols + j] = si * a[i * cols + j];
        }
    }
}

void scale_scalar(double* x, std::size_t n, double s) {
    for (std::size_t i = 0; i < n; ++i) {
        x[i] *= s;
    }
}

void accumulate_scalar(double* dst, const double* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        dst[i] += src[i];
    }
}

double max_abs_diff_scalar(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

constexpr KernelTable kScalar{
    dot_scalar,   sum_scalar,        gemv_scalar,         scale_rows_scalar,
    scale_scalar, accumulate_scalar, max_abs_diff_scalar,
};

} // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

} // namespace esac::kernels::detail
