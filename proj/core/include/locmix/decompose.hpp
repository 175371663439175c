#pragma once

#include <string>

#include "locmix/distribution.hpp"
#include "locmix/mixture.hpp"
#include "locmix/moments.hpp"

namespace locmix {

// Recovers the canonical-family coefficients of a symmetric distribution from
// its parity moments. The biased products contribute node values
// b_a = 1 - a/2^(d-1) to a Vandermonde system over the moment rows; evens and
// odds enter as the node b = 0 (they only touch the s = 0 row), and the
// full-weight parity moment M_n separates c_e from c_o. Exact rational solve;
// the result may carry negative coefficients, which is precisely what
// check_convexity detects.
SignedMixtureSpec vandermonde_decompose(const MomentProfile& profile, int d);

struct ConvexityReport {
    bool representable = false;
    Rat witness = 0;           // most negative coefficient
    std::string witness_name;  // "a=<k>", "c_e", or "c_o"
};

ConvexityReport check_convexity(const SignedMixtureSpec& spec,
                                const Rat& tolerance = Rat(0));

enum class FitLevel { weight, string };

struct NearestMixtureResult {
    MixtureSpec spec;   // exact rational coefficients from the LP
    Rat tv = 0;         // achieved total variation at the chosen level
};

// Minimizes tv between the input and the convex mixture family via an exact
// L1 linear program over the coefficient simplex; ties between optimal
// vertices break toward the lexicographically smallest coefficient vector
// (order: c_0, ..., c_{2^d}, c_e, c_o).
NearestMixtureResult nearest_mixture(const WeightDistribution& w, int d);
NearestMixtureResult nearest_mixture(const ExactDistribution& p, int d,
                                     FitLevel level = FitLevel::weight);

}  // namespace locmix
