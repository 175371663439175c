#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "locmix/distribution.hpp"
#include "locmix/rational.hpp"
#include "locmix/samplers.hpp"

namespace locmix {

// Coefficients of the canonical family: biased products at the dyadic biases
// a/2^d (the slot a = 2^{d-1} is reserved for evens/odds and stays zero when
// d >= 1) plus the evens and odds components. Signed specs arise from moment
// decomposition; convex ones describe distributions.
struct SignedMixtureSpec {
    int d = 0;
    std::vector<Rat> c;  // size 2^d + 1, indexed by the integer a
    Rat c_e = 0, c_o = 0;

    int slots() const { return (1 << d) + 1; }
    bool has_half_slot() const { return d >= 1; }
    int half_slot() const { return 1 << (d - 1); }

    Rat coefficient_sum() const;

    // Structural checks: vector length, zero half slot, coefficients sum to 1.
    void validate_signed() const;

    // All coefficients in declaration order: c[0..2^d], c_e, c_o.
    std::vector<std::pair<std::string, Rat>> named_coefficients() const;
};

bool same_coefficients(const SignedMixtureSpec& x, const SignedMixtureSpec& y);

struct MixtureSpec : SignedMixtureSpec {
    // Granularity C: the biased-product coefficients are multiples of 2^-C.
    // -1 when no grid is claimed (e.g. learner hypotheses on a 1/G grid).
    int granularity_log2 = -1;

    void validate() const;  // signed checks + nonnegativity + grid when set
};

WeightDistribution mixture_weights(const MixtureSpec& spec, int n);
ExactDistribution mixture_strings(const MixtureSpec& spec, int n);

// The exact mixture a blueprint's sampler realizes: bias branches count
// toward c_a with weight 2^-C, polynomial branches split 2^-C between evens
// and odds according to Pr[p = 0].
MixtureSpec induced_mixture(const SamplerBlueprint& blueprint);

nlohmann::json mixture_to_json(const MixtureSpec& spec);
nlohmann::json signed_mixture_to_json(const SignedMixtureSpec& spec);
MixtureSpec mixture_from_json(const nlohmann::json& j);
void save_mixture(const MixtureSpec& spec, const std::string& path);
MixtureSpec load_mixture(const std::string& path);

}  // namespace locmix
