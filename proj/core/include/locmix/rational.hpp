#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "locmix/errors.hpp"

namespace locmix {

// All distribution-level quantities in this library are rational numbers
// (outputs of d-local maps are dyadic, symmetrization adds binomial
// denominators). GMP's canonicalized mpq is the scalar type throughout;
// doubles appear only in the learner statistics and in reporting.
using Int = mpz_class;
using Rat = mpq_class;

inline Int pow2_int(unsigned k) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
    return r;
}

// 2^-k as an exact rational.
inline Rat dyadic(long num, unsigned log2_den) {
    Rat r(Int(num), pow2_int(log2_den));
    r.canonicalize();
    return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    if (k > n) return 0;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Rat rat_pow(const Rat& base, unsigned long e) {
    Rat r(1);
    Rat b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline double to_double(const Rat& x) { return x.get_d(); }

// Exact: every finite double is a dyadic rational.
inline Rat rat_from_double(double x) {
    Rat r;
    mpq_set_d(r.get_mpq_t(), x);
    return r;
}

// True iff x = c / 2^k for an integer c; reports the minimal such k.
inline bool is_dyadic(const Rat& x, unsigned* log2_den = nullptr) {
    const Int den = x.get_den();
    size_t k = mpz_scan1(den.get_mpz_t(), 0);
    if (mpz_sizeinbase(den.get_mpz_t(), 2) != k + 1) return false;
    if (log2_den) *log2_den = static_cast<unsigned>(k);
    return true;
}

// "p" or "p/q". Used by the JSON formats, which carry exact values as strings.
inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw InputError("malformed rational: " + s);
    r.canonicalize();
    require_input(r.get_den() > 0, "rational with nonpositive denominator: " + s);
    return r;
}

inline std::string rat_to_string(const Rat& x) { return x.get_str(); }

// Nearest integer to x with ties broken toward the smaller integer.
inline Int round_nearest_ties_down(const Rat& x) {
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    Rat frac = x - Rat(fl);
    if (frac > Rat(1, 2)) return fl + 1;
    return fl;
}

}  // namespace locmix
