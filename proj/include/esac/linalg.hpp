#pragma once
// Dense matrix aliases and the small linear-algebra helpers shared by the
// certification code. Matrices are row-major so their storage can be handed
// straight to the kernels in esac/kernels.hpp.

#include <Eigen/Core>

#include <span>
#include <stdexcept>
#include <string>

namespace esac {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Raised when a numerical routine cannot produce a trustworthy answer
/// (singular system, no convergence, bracket failure).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Solves A x = b with full-pivot LU. Throws NumericalError when A is
/// numerically singular.
Vector solve_linear(const Matrix& a, const Vector& b);

inline std::span<const double> as_span(const Matrix& m) {
    return {m.data(), static_cast<std::size_t>(m.size())};
}
inline std::span<double> as_span(Matrix& m) { return {m.data(), static_cast<std::size_t>(m.size())}; }
inline std::span<const double> as_span(const Vector& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}
inline std::span<double> as_span(Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

} // namespace esac
