#pragma once
// Deterministic text output: CSV tables and the certification report.
// Numbers use 12 significant digits ("%.12g"), '.' as decimal separator and
// '\n' line endings regardless of the global locale.

#include "esac/simulate.hpp"
#include "esac/stability.hpp"
#include "esac/sweep.hpp"

#include <ostream>
#include <span>
#include <string>

namespace esac {

std::string format_number(double v);

/// rho1,alpha_star_closed,alpha_star_spectral
void write_boundary_csv(std::ostream& os, std::span<const BoundaryPoint> curve);

/// k,mean_v,trigger_rate
void write_mean_v_csv(std::ostream& os, const MonteCarloResult& result);

/// k,x,u,gamma,N,F,C,v
void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory);

void print_report(std::ostream& os, const CertificationReport& report);

} // namespace esac
