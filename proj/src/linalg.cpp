#include "esac/linalg.hpp"

#include <Eigen/LU>

namespace esac {

Vector solve_linear(const Matrix& a, const Vector& b) {
    if (a.rows() != a.cols() || a.rows() != b.size()) {
        throw std::invalid_argument("solve_linear: dimension mismatch");
    }
    Eigen::FullPivLU<Matrix> lu(a);
    if (!lu.isInvertible()) {
        throw NumericalError("solve_linear: matrix is singular (rank " + std::to_string(lu.rank()) +
                             " of " + std::to_string(a.rows()) + ")");
    }
    return lu.solve(b);
}

} // namespace esac
