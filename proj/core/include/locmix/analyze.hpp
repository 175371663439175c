#pragma once

#include <vector>

#include "locmix/distribution.hpp"
#include "locmix/f2_polynomial.hpp"
#include "locmix/local_function.hpp"
#include "locmix/mixture.hpp"

namespace locmix {

// Inputs whose degree (number of gates read) is at least n/A.
std::vector<int> high_degree_inputs(const LocalFunction& f, int A);

struct ConditioningEntry {
    std::vector<std::uint8_t> rho;  // assignment to the conditioned inputs
    int a = 0;                      // nearest integer to 2^d * mean|f_rho| / n
    Rat gamma = 0;                  // a / 2^d
    Rat mean_weight = 0;
    Rat escape_mass = 0;       // mass with | |y|/n - gamma | > radius
    Rat parity_even_prob = 0;  // Pr[|f_rho| even]
    std::vector<int> exception_set;
    Rat kolmogorov_to_bin = 0;  // vs Bin(n, gamma)
    Rat even_gap = 0, odd_gap = 0;
    WeightDistribution weights;
};

struct ConditioningReport {
    std::vector<int> conditioned_inputs;  // S, ascending
    int d = 0;
    Rat radius = 0;
    int tuple_size = 0;  // k used for the exception sets
    std::vector<ConditioningEntry> entries;  // rho little-endian over S
};

ConditioningReport condition_and_bias(const LocalFunction& f,
                                      const std::vector<int>& conditioned,
                                      int d, const Rat& radius, int k = 2,
                                      const EnumerationLimits& limits = {});

// Exception coordinates of the restricted function's output distribution:
// outside of them every k-tuple is exactly gamma-biased product distributed.
std::vector<int> find_exception_set(const LocalFunction& f_rho, int k,
                                    const Rat& gamma,
                                    const EnumerationLimits& limits = {});

struct ContinuityResult {
    Rat max_gap = 0;  // max_w |W(w) - W(w + delta)|
    Rat ratio = 0;    // max_gap / (delta / n); 0 when delta = 0
};

ContinuityResult continuity_profile(const WeightDistribution& w, int delta,
                                    bool parity_constrained);

struct KolmogorovConformance {
    Rat distance_to_bin = 0;
    Rat eta = 0;  // Pr[|f_rho| even], the parity split point
    Rat even_gap = 0, odd_gap = 0;
};

KolmogorovConformance kolmogorov_conformance(const LocalFunction& f_rho,
                                             const Rat& gamma,
                                             const EnumerationLimits& limits = {});

// Algebraic normal form of one gate (monomials over global input ids).
F2Polynomial gate_anf(const OutputGate& gate, int vars);

// ANF of the output-weight parity xor_j f_j; degree is at most the locality.
F2Polynomial parity_polynomial(const LocalFunction& f);

struct ClassificationResult {
    MixtureSpec spec;          // recovered mixture, granularity |S|
    Rat tv_string = 0;         // tv(f(U^m), spec realized over strings)
    Rat tv_weight = 0;         // tv(|f(U^m)|, |spec|)
    Rat tv_symmetrization = 0; // tv(f(U^m), symmetrized f(U^m))
    ConditioningReport report;
};

// The four-step pipeline: condition on high-degree inputs, read off the
// per-conditioning dyadic bias, split the balanced conditionings between
// evens and odds by their parity probability, and report exact distances of
// f's output distribution to the reconstructed mixture.
ClassificationResult classify(const LocalFunction& f, int d, int A = 2,
                              const Rat& radius = Rat(-1), int k = 2,
                              const EnumerationLimits& limits = {});

}  // namespace locmix
