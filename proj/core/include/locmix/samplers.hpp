#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "locmix/distribution.hpp"
#include "locmix/f2_polynomial.hpp"
#include "locmix/local_function.hpp"

namespace locmix {

// One branch of a mixture sampler: either a dyadic product distribution at
// bias a/2^d (a != 2^{d-1}) or an F_2 polynomial whose bias splits the branch
// between evens and odds.
struct BranchSpec {
    enum class Type { bias, poly };
    Type type = Type::bias;
    int a = 0;          // for Type::bias
    F2Polynomial poly;  // for Type::poly

    static BranchSpec bias(int a);
    static BranchSpec polynomial(F2Polynomial p);
};

struct SamplerBlueprint {
    int n = 0;
    int d = 0;
    int selector_bits = 0;  // C: number of selector inputs
    std::vector<BranchSpec> branches;  // exactly 2^C entries

    void validate() const;  // throws PreconditionError
};

// The telescoping parity sampler: m = n inputs, output j = x_j xor x_{j+1
// mod n}. Its output distribution is exactly uniform over even-parity
// strings; build_odds negates the first gate.
LocalFunction build_evens(int n);
LocalFunction build_odds(int n);

// Each output reads d fresh inputs and fires iff their little-endian value is
// below a, so outputs are i.i.d. with bias exactly a/2^d.
LocalFunction build_biased(int n, int a, int d);

struct BuiltSampler {
    LocalFunction function;
    int locality = 0;  // achieved max fan-in, reported by the builder
};

// Selector bits choose a branch; branch inputs are fully disjoint. A bias
// branch contributes the a/2^d product distribution; a polynomial branch
// splits the polynomial's monomials round-robin (lexicographic order) into n
// bins, then masks with a fresh evens draw, contributing
// Pr[p=0] evens + Pr[p=1] odds. Per-output locality is C plus the sum of the
// per-branch fan-ins of that output.
BuiltSampler build_mixture(const SamplerBlueprint& blueprint);

// Bitwise AND of an evens draw with a uniform draw; 3-local. Its output
// distribution coincides with signed_example.
LocalFunction build_and_example(int n);

// The distribution with mass (3^{n-|x|} + (-1)^{|x|}) / 4^n at x, i.e. the
// (1/4)-biased product plus a 2^{-n-1}-scaled evens-minus-odds correction.
ExactDistribution signed_example(int n);

nlohmann::json blueprint_to_json(const SamplerBlueprint& bp);
SamplerBlueprint blueprint_from_json(const nlohmann::json& j);
void save_blueprint(const SamplerBlueprint& bp, const std::string& path);
SamplerBlueprint load_blueprint(const std::string& path);

}  // namespace locmix
