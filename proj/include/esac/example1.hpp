#pragma once
// Worked three-step scenario: n_max = 3, eta = 2, buffer length 3,
// availability N = 3, 0, 2, every packet delivered, state always above the
// trigger threshold, no disturbance. Run on the benchmark plant with the
// coarse law (c = 0.9) and a fine law with c = 0.45.

#include "esac/scheme_kind.hpp"

#include <ostream>
#include <vector>

namespace esac {

struct Example1Step {
    double u = 0.0;
    std::vector<double> buffer; ///< empty for B1/B2
};

using Example1Trace = std::vector<Example1Step>;

/// The closed-loop simulation driven by the forced environment.
Example1Trace simulate_example1(Scheme scheme);

/// The same quantities written out as explicit compositions of the plant map
/// and the control laws, e.g. u_1 = kappa1(f(x0, kappa2(x0))) for A2.
Example1Trace expected_example1(Scheme scheme);

/// Exact (bitwise) comparison of inputs and buffer contents.
bool traces_identical(const Example1Trace& a, const Example1Trace& b);

void print_example1(std::ostream& os, Scheme scheme, const Example1Trace& simulated, const Example1Trace& expected);

} // namespace esac
