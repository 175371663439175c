#pragma once

#include <string>
#include <vector>

#include "locmix/distribution.hpp"

namespace locmix {

// Identity checks around the bitwise-AND construction: the sampler's exact
// output distribution, its weight law, its full parity moment, and the
// non-convexity of its moment decomposition.
struct ExampleVerification {
    int n = 0;
    bool and_equals_signed = false;    // tv = 0 between sampler and formula
    bool weight_law = false;           // mass (3^(n-k) + (-1)^k)/4^n per string
    bool parity_moment = false;        // E[chi_[n]] = 2^(1-n)
    bool decomposition_checked = false;  // requires n >= 4 (d = 2)
    bool decomposition = false;  // c_{a=1} = 1, c_o = -2^-(n+1), not convex

    bool passed() const {
        return and_equals_signed && weight_law && parity_moment &&
               (!decomposition_checked || decomposition);
    }
    std::vector<std::string> lines() const;
};

ExampleVerification verify_example(int n, const EnumerationLimits& limits = {});

}  // namespace locmix
