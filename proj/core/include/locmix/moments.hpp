#pragma once

#include <vector>

#include "locmix/distribution.hpp"
#include "locmix/rational.hpp"

namespace locmix {

// Parity moments M_s = E[chi_S], |S| = s, of a symmetric distribution; these
// are well defined independently of the choice of S and determine the
// distribution together with n.
struct MomentProfile {
    int n = 0;
    std::vector<Rat> moments;  // size n+1, moments[0] = 1
};

// Krawtchouk value K_s(w) = sum_j (-1)^j C(w,j) C(n-w, s-j); the average of
// chi_S over weight-w strings is K_s(w) / C(n,s).
Int krawtchouk(int n, int s, int w);

// E[chi_S] for the anchor set S = {0, ..., s-1}, by direct enumeration. For
// symmetric inputs this equals the weight-level fast path below.
Rat parity_moment_dense(const ExactDistribution& p, int s);

// Weight-level fast path via the Krawtchouk identity.
Rat parity_moment(const WeightDistribution& w, int s);

// Dispatches to the fast path when p is symmetric, otherwise the dense path.
Rat parity_moment(const ExactDistribution& p, int s);

MomentProfile moment_profile(const WeightDistribution& w);
MomentProfile moment_profile(const ExactDistribution& p);

}  // namespace locmix
