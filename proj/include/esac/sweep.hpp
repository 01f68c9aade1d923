#pragma once
// Stability-guarantee boundary alpha*(rho1) for a fixed scheme, fine-law
// cost and contraction ratio epsilon = rho2 / rho1.

#include "esac/markov_core.hpp"
#include "esac/scheme_kind.hpp"

#include <vector>

namespace esac {

struct SweepSpec {
    Scheme scheme = Scheme::A2; ///< A1 or A2
    int eta = 2;
    double epsilon = 0.5;
    std::vector<double> rho1_grid;
    ChannelModel channel{1.0, {0.0, 1.0}};
};

/// {0.05, 0.10, ..., 0.95}
std::vector<double> default_rho1_grid();

struct BoundaryPoint {
    double rho1 = 0.0;
    double alpha_closed = 0.0;   ///< 1 / index(alpha = 1)
    double alpha_spectral = 0.0; ///< bisection on the spectral radius

    double discrepancy() const;
};

/// Throws std::invalid_argument unless the grid is nonempty, strictly
/// ascending and inside (0, 1), epsilon is in [0, 1], and eta fits n_max.
void validate(const SweepSpec& spec);

/// One point per grid entry, in grid order, with rho2 = epsilon * rho1.
std::vector<BoundaryPoint> boundary_curve(const SweepSpec& spec);

} // namespace esac
