// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any
// criterion fails.

#include "esac/acceptance.hpp"
#include "esac/simulate.hpp"

#include <iostream>

int main() {
    esac::AcceptanceOptions opts;
    opts.threads = esac::default_thread_count();
    const auto results = esac::run_acceptance(opts);
    esac::print_results(std::cout, results);
    return esac::all_passed(results) ? 0 : 1;
}
