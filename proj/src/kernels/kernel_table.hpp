#pragma once
// Per-backend function table. No intrinsics here; each variant lives in its
// own translation unit compiled with the matching target flags.

#include <cstddef>

namespace esac::kernels::detail {

struct KernelTable {
    double (*dot)(const double* a, const double* b, std::size_t n);
    double (*sum)(const double* x, std::size_t n);
    void (*gemv)(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
    void (*scale_rows)(const double* s, const double* a, std::size_t rows, std::size_t cols,
                       double* out);
    void (*scale)(double* x, std::size_t n, double s);
    void (*accumulate)(double* dst, const double* src, std::size_t n);
    double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_table() noexcept;

// Null when the variant was not compiled for this target.
const KernelTable* avx2_table() noexcept;
const KernelTable* neon_table() noexcept;

} // namespace esac::kernels::detail
