#include "locmix/moments.hpp"

#include <bit>

namespace locmix {

Int krawtchouk(int n, int s, int w) {
    Int sum = 0;
    for (int j = 0; j <= s; ++j) {
        if (j > w || s - j > n - w) continue;
        Int term = binomial(w, j) * binomial(n - w, s - j);
        if (j % 2 == 1)
            sum -= term;
        else
            sum += term;
    }
    return sum;
}

Rat parity_moment_dense(const ExactDistribution& p, int s) {
    require(s >= 0 && s <= p.n(), "moment order outside [0,n]");
    const std::uint64_t mask = (s == 0) ? 0 : ((std::uint64_t{1} << s) - 1);
    Rat sum(0);
    for (std::uint64_t x = 0; x < p.size(); ++x) {
        if (std::popcount(x & mask) % 2 == 0)
            sum += p.prob(x);
        else
            sum -= p.prob(x);
    }
    return sum;
}

Rat parity_moment(const WeightDistribution& w, int s) {
    require(s >= 0 && s <= w.n(), "moment order outside [0,n]");
    Rat sum(0);
    const Rat denom(binomial(w.n(), s));
    for (int k = 0; k <= w.n(); ++k) {
        if (w.prob(k) == 0) continue;
        sum += w.prob(k) * Rat(krawtchouk(w.n(), s, k));
    }
    return sum / denom;
}

Rat parity_moment(const ExactDistribution& p, int s) {
    if (p.is_symmetric()) return parity_moment(weight_distribution(p), s);
    return parity_moment_dense(p, s);
}

MomentProfile moment_profile(const WeightDistribution& w) {
    MomentProfile profile;
    profile.n = w.n();
    profile.moments.resize(w.n() + 1);
    for (int s = 0; s <= w.n(); ++s) profile.moments[s] = parity_moment(w, s);
    return profile;
}

MomentProfile moment_profile(const ExactDistribution& p) {
    return moment_profile(weight_distribution(p));
}

}  // namespace locmix
