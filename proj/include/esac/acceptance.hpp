#pragma once
// End-to-end acceptance checks, shared by `esac selftest` and the
// acceptance test binary.

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace esac {

struct AcceptanceOptions {
    int mc_runs = 10000;
    int horizon = 200;
    int random_configs = 1000;
    long chain_steps = 100000;
    int threads = 0; ///< 0: default_thread_count()
    std::uint64_t seed = 20240611;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

using Criterion = std::function<CriterionResult(const AcceptanceOptions&)>;

/// The seven criteria in order. A criterion that throws is reported as a
/// failure carrying the exception text.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

/// One "PASS|FAIL [n] title: detail (t s)" line per result.
void print_results(std::ostream& os, const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace esac
