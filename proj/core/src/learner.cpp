#include "locmix/learner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "locmix/rng.hpp"

namespace locmix {

SampleBatch sample_from_function(const LocalFunction& f, std::uint64_t count,
                                 std::uint64_t seed) {
    require_valid(f);
    SampleBatch batch;
    batch.n = f.n;
    batch.provenance = "function seed=" + std::to_string(seed);
    batch.strings.emplace();
    SplitRng rng(seed, "learner/samples");
    std::vector<std::uint8_t> x(f.m);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t word = 0;
        for (int j = 0; j < f.m; ++j) {
            if (j % 64 == 0) word = rng.next_u64();
            x[j] = (word >> (j % 64)) & 1;
        }
        std::vector<std::uint8_t> y = evaluate(f, x);
        int w = 0;
        for (std::uint8_t b : y) w += b;
        batch.weights.push_back(w);
        batch.strings->push_back(std::move(y));
    }
    return batch;
}

SampleBatch sample_from_weights(const WeightDistribution& w, std::uint64_t count,
                                std::uint64_t seed) {
    SampleBatch batch;
    batch.n = w.n();
    batch.provenance = "weights seed=" + std::to_string(seed);
    const std::vector<double> probs = w.as_doubles();
    std::vector<double> cdf(probs.size());
    double acc = 0;
    for (size_t k = 0; k < probs.size(); ++k) {
        acc += probs[k];
        cdf[k] = acc;
    }
    SplitRng rng(seed, "learner/weight-samples");
    for (std::uint64_t i = 0; i < count; ++i) {
        const double u = rng.next_unit();
        int k = 0;
        while (k < w.n() && u >= cdf[k]) ++k;
        batch.weights.push_back(k);
    }
    return batch;
}

void save_samples_text(const SampleBatch& batch, const std::string& path) {
    require_input(batch.strings.has_value(),
                  "text sample format requires full strings");
    std::ofstream out(path);
    require_input(out.good(), "cannot open for writing: " + path);
    for (const auto& s : *batch.strings) out << bits_to_string(s) << "\n";
}

SampleBatch load_samples_text(const std::string& path) {
    std::ifstream in(path);
    require_input(in.good(), "cannot open for reading: " + path);
    SampleBatch batch;
    batch.provenance = "external " + path;
    batch.strings.emplace();
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::uint8_t> bits = bits_from_string(line);
        if (batch.strings->empty()) batch.n = static_cast<int>(bits.size());
        require_input(static_cast<int>(bits.size()) == batch.n,
                      "inconsistent sample length");
        int w = 0;
        for (std::uint8_t b : bits) w += b;
        batch.weights.push_back(w);
        batch.strings->push_back(std::move(bits));
    }
    require_input(!batch.weights.empty(), "no samples in " + path);
    return batch;
}

void save_samples_binary(const SampleBatch& batch, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    require_input(out.good(), "cannot open for writing: " + path);
    out.write("LWV1", 4);
    const std::uint32_t n = batch.n;
    const std::uint64_t count = batch.weights.size();
    out.write(reinterpret_cast<const char*>(&n), 4);
    out.write(reinterpret_cast<const char*>(&count), 8);
    for (int w : batch.weights) {
        const std::uint16_t v = static_cast<std::uint16_t>(w);
        out.write(reinterpret_cast<const char*>(&v), 2);
    }
}

SampleBatch load_samples_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require_input(in.good(), "cannot open for reading: " + path);
    char magic[4];
    in.read(magic, 4);
    require_input(in.good() && std::memcmp(magic, "LWV1", 4) == 0,
                  "not a binary weight list: " + path);
    std::uint32_t n = 0;
    std::uint64_t count = 0;
    in.read(reinterpret_cast<char*>(&n), 4);
    in.read(reinterpret_cast<char*>(&count), 8);
    require_input(in.good() && n <= 60000, "corrupt binary weight list header");
    SampleBatch batch;
    batch.n = static_cast<int>(n);
    batch.provenance = "external " + path;
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint16_t v = 0;
        in.read(reinterpret_cast<char*>(&v), 2);
        require_input(in.good() && v <= n, "corrupt binary weight list entry");
        batch.weights.push_back(v);
    }
    return batch;
}

namespace {

int coefficient_count(int d) { return ((d >= 1) ? (1 << d) : 2) + 2; }

// Slot order fixed for enumeration and tie-breaking: a ascending (half slot
// excluded), then c_e, then c_o.
std::vector<int> bias_slots(int d) {
    std::vector<int> slots;
    const long full = 1L << d;
    for (long a = 0; a <= full; ++a) {
        if (d >= 1 && 2 * a == full) continue;
        slots.push_back(static_cast<int>(a));
    }
    return slots;
}

}  // namespace

std::uint64_t cover_size(int d, unsigned grid) {
    const int k = coefficient_count(d);
    const Int count = binomial(grid + k - 1, k - 1);
    if (!count.fits_ulong_p()) return UINT64_MAX;
    return count.get_ui();
}

unsigned cover_grid(int d, double epsilon) {
    require(epsilon > 0 && epsilon < 1, "epsilon outside (0,1)");
    return static_cast<unsigned>(
        std::ceil(2.0 * coefficient_count(d) / epsilon));
}

HypothesisSet hypothesis_cover(int n, int d, double epsilon,
                               std::uint64_t max_count) {
    return hypothesis_cover_grid(n, d, cover_grid(d, epsilon), max_count);
}

HypothesisSet hypothesis_cover_grid(int n, int d, unsigned grid,
                                    std::uint64_t max_count) {
    require(n >= 1 && d >= 0 && d <= 10, "cover parameters out of range");
    require(grid >= 1, "grid must be >= 1");
    require_resource(cover_size(d, grid) <= max_count,
                     "hypothesis cover larger than the configured cap");

    HypothesisSet set;
    set.n = n;
    set.d = d;
    set.grid = grid;

    const std::vector<int> slots = bias_slots(d);
    const int k = coefficient_count(d);

    // Basis weight vectors in slot order, as doubles for the tournament.
    std::vector<std::vector<double>> basis;
    const long full = 1L << d;
    for (int a : slots) {
        Rat gamma(Int(static_cast<long>(a)), Int(full));
        gamma.canonicalize();
        basis.push_back(binomial_weights(n, gamma).as_doubles());
    }
    basis.push_back(evens_weights(n).as_doubles());
    basis.push_back(odds_weights(n).as_doubles());

    // Enumerate compositions of `grid` into k parts, lexicographically.
    std::vector<unsigned> parts(k, 0);
    std::vector<MixtureSpec> hypotheses;
    std::vector<std::vector<double>> weight_vectors;

    auto emit = [&]() {
        MixtureSpec spec;
        spec.d = d;
        spec.c.assign(spec.slots(), Rat(0));
        for (size_t j = 0; j < slots.size(); ++j) {
            Rat r(Int(static_cast<long>(parts[j])), Int(static_cast<long>(grid)));
            r.canonicalize();
            spec.c[slots[j]] = std::move(r);
        }
        Rat e(Int(static_cast<long>(parts[slots.size()])),
              Int(static_cast<long>(grid)));
        e.canonicalize();
        Rat o(Int(static_cast<long>(parts[slots.size() + 1])),
              Int(static_cast<long>(grid)));
        o.canonicalize();
        spec.c_e = std::move(e);
        spec.c_o = std::move(o);

        std::vector<double> wv(n + 1, 0.0);
        for (int j = 0; j < k; ++j) {
            if (parts[j] == 0) continue;
            const double c = static_cast<double>(parts[j]) / grid;
            for (int w = 0; w <= n; ++w) wv[w] += c * basis[j][w];
        }
        hypotheses.push_back(std::move(spec));
        weight_vectors.push_back(std::move(wv));
    };

    auto enumerate = [&](auto&& self, int pos, unsigned remaining) -> void {
        if (pos == k - 1) {
            parts[pos] = remaining;
            emit();
            return;
        }
        for (unsigned v = 0; v <= remaining; ++v) {
            parts[pos] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    enumerate(enumerate, 0, grid);

    set.hypotheses = std::move(hypotheses);
    set.weight_vectors = std::move(weight_vectors);
    return set;
}

namespace {

// |h_i(A_ij) - emp(A_ij)| for A_ij = {w : h_i(w) > h_j(w)}.
double yatracos_deviation(const std::vector<double>& hi,
                          const std::vector<double>& hj,
                          const std::vector<double>& emp) {
    double gap = 0;
    for (size_t w = 0; w < hi.size(); ++w)
        if (hi[w] > hj[w]) gap += hi[w] - emp[w];
    return std::fabs(gap);
}

std::vector<double> empirical_weights(const SampleBatch& samples, int n) {
    std::vector<double> emp(n + 1, 0.0);
    for (int w : samples.weights) {
        require_input(w >= 0 && w <= n, "sample weight out of range");
        emp[w] += 1.0;
    }
    for (double& v : emp) v /= static_cast<double>(samples.size());
    return emp;
}

}  // namespace

ScheffeResult scheffe_select(const SampleBatch& samples,
                             const HypothesisSet& hypotheses) {
    require(!hypotheses.hypotheses.empty(), "empty hypothesis set");
    require(samples.size() > 0, "empty sample batch");
    require(samples.n == hypotheses.n, "sample dimension mismatch");

    const std::vector<double> emp = empirical_weights(samples, hypotheses.n);
    const auto& wv = hypotheses.weight_vectors;
    const size_t h = wv.size();

    ScheffeResult result;
    double best = -1;
    for (size_t i = 0; i < h; ++i) {
        double worst = 0;
        for (size_t j = 0; j < h; ++j) {
            if (j == i) continue;
            worst = std::max(worst, yatracos_deviation(wv[i], wv[j], emp));
            // A later hypothesis cannot win on a tie; abandon at >= best.
            if (best >= 0 && worst >= best) break;
        }
        if (best < 0 || worst < best) {
            best = worst;
            result.index = i;
            result.max_deviation = worst;
        }
    }
    return result;
}

std::vector<double> scheffe_deviations(const SampleBatch& samples,
                                       const HypothesisSet& hypotheses) {
    const std::vector<double> emp = empirical_weights(samples, hypotheses.n);
    const auto& wv = hypotheses.weight_vectors;
    std::vector<double> deviations(wv.size(), 0.0);
    for (size_t i = 0; i < wv.size(); ++i)
        for (size_t j = 0; j < wv.size(); ++j) {
            if (j == i) continue;
            deviations[i] =
                std::max(deviations[i], yatracos_deviation(wv[i], wv[j], emp));
        }
    return deviations;
}

unsigned effective_grid(int d, double epsilon, std::uint64_t hypothesis_budget) {
    unsigned grid = cover_grid(d, epsilon);
    while (grid > 1 && cover_size(d, grid) > hypothesis_budget) --grid;
    return grid;
}

LearnResult learn(const SampleBatch& samples, int n, int d, double epsilon,
                  const LearnConfig& config) {
    require(epsilon > 0 && epsilon < 1, "epsilon outside (0,1)");
    require(samples.n == n, "sample dimension mismatch");

    const unsigned grid = effective_grid(d, epsilon, config.hypothesis_budget);
    HypothesisSet cover =
        hypothesis_cover_grid(n, d, grid, config.max_cover_count);
    ScheffeResult chosen = scheffe_select(samples, cover);

    LearnResult result;
    result.spec = cover.hypotheses[chosen.index];
    result.samples_used = samples.size();
    result.hypothesis_index = chosen.index;
    result.max_deviation = chosen.max_deviation;
    result.grid = grid;
    return result;
}

LearnResult learn(const LocalFunction& source, int n, int d, double epsilon,
                  std::uint64_t seed, const LearnConfig& config) {
    require(epsilon > 0 && epsilon < 1, "epsilon outside (0,1)");
    require(source.n == n, "source dimension mismatch");
    const std::uint64_t count = static_cast<std::uint64_t>(
        std::ceil(config.sample_constant / (epsilon * epsilon)));
    SampleBatch samples = sample_from_function(source, count, seed);
    return learn(samples, n, d, epsilon, config);
}

}  // namespace locmix
