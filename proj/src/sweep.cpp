#include "esac/sweep.hpp"

#include "esac/stability.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace esac {

std::vector<double> default_rho1_grid() {
    std::vector<double> grid;
    for (int k = 1; k <= 19; ++k) {
        grid.push_back(k / 20.0);
    }
    return grid;
}

double BoundaryPoint::discrepancy() const { return std::abs(alpha_closed - alpha_spectral); }

void validate(const SweepSpec& spec) {
    if (spec.scheme != Scheme::A1 && spec.scheme != Scheme::A2) {
        throw std::invalid_argument("sweep covers A1 and A2 only");
    }
    if (spec.rho1_grid.empty()) {
        throw std::invalid_argument("rho1 grid is empty");
    }
    for (std::size_t i = 0; i < spec.rho1_grid.size(); ++i) {
        const double r = spec.rho1_grid[i];
        if (!(r > 0.0 && r < 1.0)) {
            throw std::invalid_argument("rho1 grid value " + std::to_string(r) + " is outside (0, 1)");
        }
        if (i > 0 && !(r > spec.rho1_grid[i - 1])) {
            throw std::invalid_argument("rho1 grid must be strictly ascending");
        }
    }
    if (!(spec.epsilon >= 0.0 && spec.epsilon <= 1.0)) {
        throw std::invalid_argument("epsilon = " + std::to_string(spec.epsilon) + " is outside [0, 1]");
    }
    if (spec.scheme == Scheme::A2 && (spec.eta < 1 || spec.eta > spec.channel.n_max())) {
        throw std::invalid_argument("eta = " + std::to_string(spec.eta) + " must lie in [1, n_max = " +
                                    std::to_string(spec.channel.n_max()) + "]");
    }
}

std::vector<BoundaryPoint> boundary_curve(const SweepSpec& spec) {
    validate(spec);
    std::vector<BoundaryPoint> curve;
    curve.reserve(spec.rho1_grid.size());
    BoundaryConfig cfg;
    cfg.scheme = spec.scheme;
    cfg.eta = spec.scheme == Scheme::A1 ? 1 : spec.eta;
    cfg.l.assign(spec.channel.l().begin(), spec.channel.l().end());
    for (const double rho1 : spec.rho1_grid) {
        cfg.rho1 = rho1;
        cfg.rho2 = spec.scheme == Scheme::A1 ? rho1 : spec.epsilon * rho1;
        curve.push_back({rho1, critical_alpha_closed(cfg), critical_alpha_bisection(cfg)});
    }
    return curve;
}

} // namespace esac
