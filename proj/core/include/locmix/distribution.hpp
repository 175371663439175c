#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <json.hpp>

#include "locmix/local_function.hpp"
#include "locmix/rational.hpp"

namespace locmix {

// Exact distribution over {0,1}^n, stored as one rational per string. The
// index of string x is sum_j x_j 2^j. Outputs of local functions are dyadic
// (denominator 2^m); symmetrization introduces binomial-coefficient
// denominators, which this representation carries exactly as well.
class ExactDistribution {
public:
    ExactDistribution() = default;

    static ExactDistribution from_probabilities(int n, std::vector<Rat> probs);
    static ExactDistribution from_counts(int n, const std::vector<Int>& counts,
                                         const Int& denom);

    int n() const { return n_; }
    std::uint64_t size() const { return std::uint64_t{1} << n_; }
    const Rat& prob(std::uint64_t x) const { return p_[x]; }
    const std::vector<Rat>& probabilities() const { return p_; }

    // True iff every probability is c/2^k; reports the least common exponent.
    bool is_dyadic(unsigned* denom_log2 = nullptr) const;
    bool is_symmetric() const;

private:
    int n_ = 0;
    std::vector<Rat> p_;
};

// Distribution of the Hamming weight, over {0, ..., n}.
class WeightDistribution {
public:
    WeightDistribution() = default;

    static WeightDistribution from_probabilities(int n, std::vector<Rat> probs);

    int n() const { return n_; }
    const Rat& prob(int w) const { return p_[w]; }
    const std::vector<Rat>& probabilities() const { return p_; }
    std::vector<double> as_doubles() const;

private:
    int n_ = 0;
    std::vector<Rat> p_;
};

// The named family: evens/odds (uniform over even/odd-weight strings),
// gamma-biased products, fixed-weight slices, points, binomial weights.
enum class NamedKind {
    evens,
    odds,
    fixed_weight,
    biased_product,
    binomial,
    point,
    uniform,
};

struct NamedDistribution {
    NamedKind kind = NamedKind::uniform;
    Rat gamma = 0;            // biased_product, binomial
    int k = 0;                // fixed_weight
    std::uint64_t point = 0;  // point

    // Binomial is weight-level only; everything else realizes both ways.
    ExactDistribution realize_strings(int n) const;
    WeightDistribution realize_weights(int n) const;
};

NamedDistribution make_named(NamedKind kind, const Rat& gamma = Rat(0),
                             int k = 0, std::uint64_t point = 0);
NamedKind named_kind_from_string(const std::string& name);

ExactDistribution make_evens(int n);
ExactDistribution make_odds(int n);
ExactDistribution make_point(int n, std::uint64_t x);
ExactDistribution make_uniform(int n);
ExactDistribution make_biased_product(int n, const Rat& gamma);
ExactDistribution make_fixed_weight(int n, int k);
WeightDistribution binomial_weights(int n, const Rat& gamma);
WeightDistribution evens_weights(int n);
WeightDistribution odds_weights(int n);

Rat tv(const ExactDistribution& p, const ExactDistribution& q);
Rat tv(const WeightDistribution& p, const WeightDistribution& q);

WeightDistribution weight_distribution(const ExactDistribution& p);

// Distribution of a uniformly permuted draw: mass |P|(w)/C(n,w) per string.
ExactDistribution symmetrize(const ExactDistribution& p);

// sup_t |Pr[W1 >= t] - Pr[W2 >= t]| over integer thresholds.
Rat kolmogorov(const WeightDistribution& w1, const WeightDistribution& w2);

// Gaps of the parity-restricted tails against eta * Bin(n,1/2) tails:
// first = sup_t |Pr[W >= t and W even] - eta Pr[Bin >= t]|, second the odd
// counterpart with weight 1-eta.
std::pair<Rat, Rat> parity_split_kolmogorov(const WeightDistribution& w,
                                            const Rat& eta);

ExactDistribution marginal(const ExactDistribution& p,
                           const std::vector<int>& coords);

// Minimum distance from gamma to an integer multiple of 2^-d.
Rat binary_representation_error(const Rat& gamma, int d);

struct KwiseReport {
    // Greedily collected disjoint violating k-tuples, in lexicographic scan
    // order; the exception set is the union of their coordinates.
    std::vector<std::vector<int>> violating_tuples;
    std::vector<int> exception_set;
};

// Scans all k-tuples of coordinates in lexicographic order and reports a
// maximal disjoint family whose marginals differ from the gamma-biased
// product; every k-tuple avoiding the exception set matches it exactly.
KwiseReport kwise_violations(const ExactDistribution& p, int k, const Rat& gamma);

struct ModShiftResult {
    Rat exact_tv;        // tv(|V| mod q, 1+|V| mod q), V ~ gamma-biased^(t-1)
    double lower_bound;  // sqrt(r (1-4 gamma(1-gamma) r)^(t-1)), r = sin^2(pi/q)
};

ModShiftResult mod_shift_tv(int t, const Rat& gamma, int q);

struct EnumerationLimits {
    int max_enum_bits = 26;  // inputs enumerated per conditioned component
    int max_output_bits = 20;
    std::uint64_t max_total_work = std::uint64_t{1} << 28;
    int threads = 1;
};

// Exact pushforward of the uniform input distribution through f. Enumeration
// is exact and performed per connected component of the influence graph; a
// component too large to enumerate is handled by conditioning on its
// highest-degree input and mixing the two restricted results, so structured
// functions with many inputs (e.g. mixture samplers) stay tractable.
ExactDistribution output_distribution(const LocalFunction& f,
                                      const EnumerationLimits& limits = {});

nlohmann::json distribution_to_json(const ExactDistribution& p);
ExactDistribution distribution_from_json(const nlohmann::json& j);
nlohmann::json weights_to_json(const WeightDistribution& w);
WeightDistribution weights_from_json(const nlohmann::json& j);

void save_distribution(const ExactDistribution& p, const std::string& path);
void save_weights(const WeightDistribution& w, const std::string& path);

// Loads either a dense string-level file or a weight-level file.
struct LoadedDistribution {
    bool is_weights = false;
    ExactDistribution dense;
    WeightDistribution weights;
};
LoadedDistribution load_any_distribution(const std::string& path);

}  // namespace locmix
