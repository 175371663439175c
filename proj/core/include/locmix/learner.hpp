#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "locmix/distribution.hpp"
#include "locmix/local_function.hpp"
#include "locmix/mixture.hpp"

namespace locmix {

// Samples of an n-bit source. The tournament only needs Hamming weights
// (hypotheses are symmetric); full strings are kept when available.
struct SampleBatch {
    int n = 0;
    std::vector<int> weights;
    std::optional<std::vector<std::vector<std::uint8_t>>> strings;
    std::string provenance;

    size_t size() const { return weights.size(); }
};

SampleBatch sample_from_function(const LocalFunction& f, std::uint64_t count,
                                 std::uint64_t seed);
SampleBatch sample_from_weights(const WeightDistribution& w, std::uint64_t count,
                                std::uint64_t seed);

// Text format: one bit-string per line. Binary format: "LWV1", u32 n,
// u64 count, u16 weights, all little-endian.
void save_samples_text(const SampleBatch& batch, const std::string& path);
SampleBatch load_samples_text(const std::string& path);
void save_samples_binary(const SampleBatch& batch, const std::string& path);
SampleBatch load_samples_binary(const std::string& path);

struct HypothesisSet {
    int n = 0;
    int d = 0;
    unsigned grid = 0;  // coefficients lie on {0, 1/grid, ..., 1}
    std::vector<MixtureSpec> hypotheses;
    std::vector<std::vector<double>> weight_vectors;  // per-hypothesis |h|
};

// Number of grid compositions, i.e. C(grid + k - 1, k - 1) for k coefficients.
std::uint64_t cover_size(int d, unsigned grid);

// The grid G = ceil(2 k / eps) over k coefficients guarantees some
// hypothesis within tv eps/2 of every mixture (coefficient L1 within eps);
// refuses to materialize more than max_count hypotheses.
unsigned cover_grid(int d, double epsilon);
HypothesisSet hypothesis_cover(int n, int d, double epsilon,
                               std::uint64_t max_count = 20'000'000);
HypothesisSet hypothesis_cover_grid(int n, int d, unsigned grid,
                                    std::uint64_t max_count = 20'000'000);

struct ScheffeResult {
    size_t index = 0;
    double max_deviation = 0;  // max over opponents of the Yatracos gap
};

// Minimum-distance tournament: for the ordered pair (i, j) the Yatracos set
// is A_ij = {w : h_i(w) > h_j(w)}; the winner minimizes
// max_j |h_i(A_ij) - empirical(A_ij)|, ties to the lowest index.
ScheffeResult scheffe_select(const SampleBatch& samples,
                             const HypothesisSet& hypotheses);

// Full per-hypothesis max deviations (no pruning); feeds the CSV report.
std::vector<double> scheffe_deviations(const SampleBatch& samples,
                                       const HypothesisSet& hypotheses);

struct LearnConfig {
    double sample_constant = 10.0;       // N = ceil(sample_constant / eps^2)
    std::uint64_t hypothesis_budget = 5000;  // cap on |H| for the tournament
    std::uint64_t max_cover_count = 20'000'000;
};

struct LearnResult {
    MixtureSpec spec;
    std::uint64_t samples_used = 0;
    size_t hypothesis_index = 0;
    double max_deviation = 0;
    unsigned grid = 0;  // effective cover grid used
};

// Cover + tournament. The effective grid is the eps-driven one when its
// cover fits the hypothesis budget, otherwise the largest grid that does.
unsigned effective_grid(int d, double epsilon, std::uint64_t hypothesis_budget);
LearnResult learn(const SampleBatch& samples, int n, int d, double epsilon,
                  const LearnConfig& config = {});
LearnResult learn(const LocalFunction& source, int n, int d, double epsilon,
                  std::uint64_t seed, const LearnConfig& config = {});

}  // namespace locmix
