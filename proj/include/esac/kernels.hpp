#pragma once
// Dense double-precision kernels used by the certification and simulation
// inner loops. Each kernel has a scalar reference implementation and
// vectorized variants (AVX2+FMA on x86-64, NEON on AArch64) selected once at
// runtime from the host CPU features.
//
// Equivalence guarantees between the scalar reference and a vector variant:
//   - elementwise kernels (scale, scale_rows, accumulate, max_abs_diff) are
//     bitwise identical;
//   - reductions (dot, sum, gemv) reassociate the summation and agree to a
//     few ulps of the summed magnitudes.
//
// The ESAC_SIMD environment variable ("scalar", "avx2", "neon") overrides the
// automatic choice; an unavailable request falls back to scalar.

#include <cstddef>
#include <span>
#include <string_view>

namespace esac::kernels {

enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend backend) noexcept;

/// True when the variant was compiled in and the host CPU supports it.
bool backend_available(Backend backend) noexcept;

Backend active_backend() noexcept;

/// Pins the dispatch table. Throws std::invalid_argument when unavailable.
void force_backend(Backend backend);

/// Restores the automatic (CPU feature / ESAC_SIMD) choice.
void reset_backend() noexcept;

double dot(std::span<const double> a, std::span<const double> b);

double sum(std::span<const double> x);

/// y = A x for a row-major rows x cols matrix.
void gemv(std::span<const double> a, std::size_t rows, std::size_t cols,
          std::span<const double> x, std::span<double> y);

/// out[i][j] = scale[i] * a[i][j] (row-major). `out` may alias `a`.
void scale_rows(std::span<const double> scale, std::span<const double> a,
                std::size_t rows, std::size_t cols, std::span<double> out);

/// x *= s
void scale(std::span<double> x, double s);

/// dst += src
void accumulate(std::span<double> dst, std::span<const double> src);

/// max_i |a_i - b_i|, 0 for empty input.
double max_abs_diff(std::span<const double> a, std::span<const double> b);

} // namespace esac::kernels
