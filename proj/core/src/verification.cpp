#include "locmix/verification.hpp"

#include <bit>

#include "locmix/decompose.hpp"
#include "locmix/moments.hpp"
#include "locmix/samplers.hpp"

namespace locmix {

ExampleVerification verify_example(int n, const EnumerationLimits& limits) {
    require(n >= 2, "verify_example requires n >= 2");
    ExampleVerification v;
    v.n = n;

    const ExactDistribution sampled =
        output_distribution(build_and_example(n), limits);
    const ExactDistribution formula = signed_example(n);
    v.and_equals_signed = tv(sampled, formula) == 0;

    // Mass law (3^(n-k) + (-1)^k)/4^n, checked per string.
    Int denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), 4, n);
    std::vector<Int> three(n + 1);
    three[0] = 1;
    for (int k = 1; k <= n; ++k) three[k] = three[k - 1] * 3;
    v.weight_law = true;
    for (std::uint64_t x = 0; x < sampled.size(); ++x) {
        const int k = std::popcount(x);
        Rat expected(three[n - k] + ((k % 2 == 0) ? 1 : -1), denom);
        expected.canonicalize();
        if (sampled.prob(x) != expected) {
            v.weight_law = false;
            break;
        }
    }

    const MomentProfile profile = moment_profile(sampled);
    v.parity_moment = profile.moments[n] == dyadic(1, n - 1);

    if (n >= 4) {
        v.decomposition_checked = true;
        const SignedMixtureSpec spec = vandermonde_decompose(profile, 2);
        const ConvexityReport convexity = check_convexity(spec);
        const Rat correction = dyadic(1, n + 1);
        v.decomposition = spec.c[1] == 1 && spec.c[0] == 0 && spec.c[3] == 0 &&
                          spec.c[4] == 0 && spec.c_e == correction &&
                          spec.c_o == -correction && !convexity.representable &&
                          convexity.witness_name == "c_o" &&
                          convexity.witness == -correction;
    }
    return v;
}

std::vector<std::string> ExampleVerification::lines() const {
    auto mark = [](bool ok) { return ok ? "pass" : "FAIL"; };
    std::vector<std::string> out;
    out.push_back(std::string("and-sampler equals signed formula: ") +
                  mark(and_equals_signed));
    out.push_back(std::string("weight law (3^(n-k)+(-1)^k)/4^n: ") +
                  mark(weight_law));
    out.push_back(std::string("full parity moment 2^(1-n): ") +
                  mark(parity_moment));
    if (decomposition_checked)
        out.push_back(std::string("vandermonde decomposition, c_o witness: ") +
                      mark(decomposition));
    else
        out.push_back("vandermonde decomposition: skipped (n < 4)");
    return out;
}

}  // namespace locmix
