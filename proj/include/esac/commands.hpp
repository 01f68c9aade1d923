#pragma once
// Subcommands of the esac tool. Each returns the process exit status:
// 0 success (or certified), 2 not certified, 1 error. Configuration and
// numerical errors propagate as exceptions; the caller prints them.

#include "esac/config.hpp"

#include <ostream>

namespace esac {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotCertified = 2;

int run_certify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Boundary CSV to cfg.output ('-' is `out`).
int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Mean-V CSV of the benchmark plant to cfg.output; optional trajectory
/// dump of run 0 to cfg.trajectory.
int run_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int run_example1(std::ostream& out);

int run_selftest(std::ostream& out);

} // namespace esac
