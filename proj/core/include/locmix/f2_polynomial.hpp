#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "locmix/rational.hpp"

namespace locmix {

// Multilinear polynomial over F_2 in algebraic normal form: a set of distinct
// monomials, each a sorted list of variable indices. The empty monomial is
// the constant 1; an empty monomial set is the zero polynomial.
struct F2Polynomial {
    int vars = 0;
    std::vector<std::vector<int>> monomials;  // sorted lists, lex-sorted set

    static F2Polynomial zero(int vars);
    static F2Polynomial one(int vars);

    int degree() const;
    bool is_zero() const { return monomials.empty(); }
    bool is_one() const {
        return monomials.size() == 1 && monomials[0].empty();
    }

    bool evaluate(const std::vector<std::uint8_t>& x) const;

    // XOR of two polynomials: symmetric difference of monomial sets.
    F2Polynomial operator^(const F2Polynomial& other) const;

    // Canonicalize: sort variable lists, sort monomials lexicographically,
    // drop duplicate pairs (mod 2). Throws on out-of-range indices.
    void normalize();

    // Pr[p = 0] under uniform inputs, by enumeration over the variables the
    // polynomial actually mentions (cap on their count).
    Rat zero_probability(int max_enum_bits = 26) const;
};

nlohmann::json f2_polynomial_to_json(const F2Polynomial& p);
F2Polynomial f2_polynomial_from_json(const nlohmann::json& j);

}  // namespace locmix
