// Acceptance suite: prints one pass/fail line per criterion and exits with
// the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "locmix/analyze.hpp"
#include "locmix/decompose.hpp"
#include "locmix/learner.hpp"
#include "locmix/mixture.hpp"
#include "locmix/moments.hpp"
#include "locmix/rng.hpp"
#include "locmix/samplers.hpp"
#include "locmix/verification.hpp"

using namespace locmix;

namespace {

Rat rat(long num, long den) {
    Rat r{Int(num), Int(den)};
    r.canonicalize();
    return r;
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& what) {
        pass = false;
        if (detail.empty()) detail = what;
    }
};

// Exact binomial table built incrementally: an oracle independent of
// binomial_weights' power-based path.
std::vector<Rat> binomial_table(int n, const Rat& gamma) {
    std::vector<Rat> table(n + 1);
    table[0] = rat_pow(Rat(1) - gamma, n);
    const Rat odds_ratio = gamma / (Rat(1) - gamma);
    for (int w = 0; w < n; ++w)
        table[w + 1] = table[w] * odds_ratio * Rat(n - w) / Rat(w + 1);
    return table;
}

// ---------------------------------------------------------------------------

Outcome criterion1_sampler_exactness() {
    Outcome out;
    for (int n = 2; n <= 12 && out.pass; ++n) {
        if (tv(output_distribution(build_evens(n)), make_evens(n)) != 0)
            out.fail("evens n=" + std::to_string(n));
        if (tv(output_distribution(build_odds(n)), make_odds(n)) != 0)
            out.fail("odds n=" + std::to_string(n));
        for (int d = 1; d <= 3 && out.pass; ++d)
            for (int a = 0; a <= (1 << d); ++a) {
                const auto dist = output_distribution(build_biased(n, a, d));
                if (tv(dist, make_biased_product(n, rat(a, 1 << d))) != 0) {
                    out.fail("biased n=" + std::to_string(n) + " a=" +
                             std::to_string(a) + " d=" + std::to_string(d));
                    break;
                }
            }

        // Two-branch blueprints: bias + polynomial, and the two constants.
        F2Polynomial p;
        p.vars = 3;
        p.monomials = {{0, 1}, {2}};
        p.normalize();
        SamplerBlueprint bp;
        bp.n = n;
        bp.d = 2;
        bp.selector_bits = 1;
        bp.branches = {BranchSpec::bias(1), BranchSpec::polynomial(p)};
        const auto built = build_mixture(bp);
        const Rat zero_prob = p.zero_probability();
        std::vector<Rat> target(std::uint64_t{1} << n);
        const auto u = make_biased_product(n, rat(1, 4));
        const auto evens = make_evens(n);
        const auto odds = make_odds(n);
        for (std::uint64_t x = 0; x < target.size(); ++x)
            target[x] = u.prob(x) / 2 + (zero_prob * evens.prob(x) +
                                         (Rat(1) - zero_prob) * odds.prob(x)) /
                                            2;
        if (tv(output_distribution(built.function),
               ExactDistribution::from_probabilities(n, target)) != 0)
            out.fail("mixture blueprint n=" + std::to_string(n));

        SamplerBlueprint constants;
        constants.n = n;
        constants.d = 1;
        constants.selector_bits = 1;
        constants.branches = {BranchSpec::polynomial(F2Polynomial::zero(0)),
                              BranchSpec::polynomial(F2Polynomial::one(0))};
        if (tv(output_distribution(build_mixture(constants).function),
               make_uniform(n)) != 0)
            out.fail("constant-poly blueprint n=" + std::to_string(n));
    }
    return out;
}

Outcome criterion2_appendix_reproduction() {
    Outcome out;
    for (int n = 2; n <= 12; ++n) {
        const auto v = verify_example(n);
        if (!v.passed()) out.fail("verify-example n=" + std::to_string(n));
        if (n >= 4 && !v.decomposition_checked)
            out.fail("decomposition skipped at n=" + std::to_string(n));
    }
    return out;
}

Outcome criterion3_roundtrip() {
    Outcome out;
    SplitRng rng(20260808, "acceptance/roundtrip");
    for (int trial = 0; trial < 100; ++trial) {
        const int d = static_cast<int>(rng.below(4));
        const int c = 1 + static_cast<int>(rng.below(6));
        MixtureSpec spec;
        spec.d = d;
        spec.granularity_log2 = c;
        spec.c.assign(spec.slots(), Rat(0));
        std::vector<int> slots;
        for (int a = 0; a < spec.slots(); ++a)
            if (!spec.has_half_slot() || a != spec.half_slot()) slots.push_back(a);
        const long total = 1L << c;
        std::vector<long> cuts(slots.size() + 1);
        for (auto& cut : cuts) cut = static_cast<long>(rng.below(total + 1));
        std::sort(cuts.begin(), cuts.end());
        long prev = 0;
        std::vector<long> parts;
        for (long cut : cuts) {
            parts.push_back(cut - prev);
            prev = cut;
        }
        parts.push_back(total - prev);
        for (size_t j = 0; j < slots.size(); ++j)
            spec.c[slots[j]] = rat(parts[j], total);
        spec.c_e = rat(parts[slots.size()], total);
        spec.c_o = rat(parts[slots.size() + 1], total);
        spec.validate();

        const auto recovered =
            vandermonde_decompose(moment_profile(mixture_weights(spec, 16)), d);
        if (!same_coefficients(spec, recovered)) {
            out.fail("round trip trial " + std::to_string(trial));
            break;
        }
    }
    return out;
}

SamplerBlueprint random_blueprint(SplitRng& rng) {
    SamplerBlueprint bp;
    bp.n = 6 + static_cast<int>(rng.below(5));       // 6..10
    bp.d = 1 + static_cast<int>(rng.below(3));       // 1..3
    bp.selector_bits = static_cast<int>(rng.below(3));  // 0..2
    const int branches = 1 << bp.selector_bits;
    for (int b = 0; b < branches; ++b) {
        if (rng.below(100) < 55) {
            int a;
            do {
                a = static_cast<int>(rng.below((1 << bp.d) + 1));
            } while (bp.d >= 1 && a == (1 << (bp.d - 1)));
            bp.branches.push_back(BranchSpec::bias(a));
        } else {
            F2Polynomial p;
            p.vars = 1 + static_cast<int>(rng.below(4));
            const int monomials = 1 + static_cast<int>(rng.below(4));
            for (int t = 0; t < monomials; ++t) {
                std::vector<int> mon;
                const int size = static_cast<int>(rng.below(bp.d + 1));
                for (int j = 0; j < size; ++j)
                    mon.push_back(static_cast<int>(rng.below(p.vars)));
                p.monomials.push_back(std::move(mon));
            }
            p.normalize();
            bp.branches.push_back(BranchSpec::polynomial(std::move(p)));
        }
    }
    return bp;
}

Outcome criterion4_classification_recovery() {
    Outcome out;
    SplitRng rng(555, "acceptance/classify");
    int done = 0;
    while (done < 25 && out.pass) {
        const SamplerBlueprint bp = random_blueprint(rng);
        BuiltSampler built;
        try {
            built = build_mixture(bp);
        } catch (const ResourceError&) {
            continue;  // fan-in beyond the gate cap; draw again
        }
        if (built.locality > 18) continue;
        ++done;
        const auto result = classify(built.function, bp.d);
        const auto induced = induced_mixture(bp);
        if (!same_coefficients(result.spec, induced))
            out.fail("spec mismatch at trial " + std::to_string(done));
        if (result.tv_string != 0)
            out.fail("nonzero tv at trial " + std::to_string(done));
    }
    return out;
}

Outcome criterion5_kwise_uniformity() {
    Outcome out;
    for (int n = 2; n <= 10 && out.pass; ++n) {
        const auto dist = output_distribution(build_evens(n));
        const std::uint64_t full = (std::uint64_t{1} << n) - 1;
        for (std::uint64_t mask = 1; mask < full && out.pass; ++mask) {
            std::vector<int> coords;
            for (int j = 0; j < n; ++j)
                if ((mask >> j) & 1) coords.push_back(j);
            const auto m = marginal(dist, coords);
            const Rat uniform = dyadic(1, coords.size());
            for (std::uint64_t x = 0; x < m.size(); ++x)
                if (m.prob(x) != uniform) {
                    out.fail("n=" + std::to_string(n) + " mask=" +
                             std::to_string(mask));
                    break;
                }
        }
    }
    return out;
}

ExactDistribution random_distribution(int n, int dlog, SplitRng& rng) {
    const std::uint64_t size = std::uint64_t{1} << n;
    std::vector<Int> counts(size, Int(0));
    const std::uint64_t total = std::uint64_t{1} << dlog;
    std::vector<std::uint64_t> cuts(size - 1);
    for (auto& c : cuts) c = rng.below(total + 1);
    std::sort(cuts.begin(), cuts.end());
    std::uint64_t prev = 0;
    for (std::uint64_t i = 0; i + 1 < size; ++i) {
        counts[i] = Int(static_cast<unsigned long>(cuts[i] - prev));
        prev = cuts[i];
    }
    counts[size - 1] = Int(static_cast<unsigned long>(total - prev));
    return ExactDistribution::from_counts(n, counts, pow2_int(dlog));
}

Outcome criterion6_distance_inequalities() {
    Outcome out;
    SplitRng rng(606, "acceptance/distances");
    for (int trial = 0; trial < 1000 && out.pass; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(7));  // 2..8
        const auto p = random_distribution(n, 10, rng);
        const auto q = random_distribution(n, 10, rng);
        if (tv(weight_distribution(p), weight_distribution(q)) > tv(p, q))
            out.fail("weight data processing, trial " + std::to_string(trial));
        const auto qs = symmetrize(q);
        if (tv(p, symmetrize(p)) > Rat(2) * tv(p, qs))
            out.fail("symmetrization bound, trial " + std::to_string(trial));
        if (tv(weight_distribution(p), weight_distribution(qs)) > tv(p, qs))
            out.fail("weight bound vs symmetric, trial " + std::to_string(trial));
    }
    for (int trial = 0; trial < 1000 && out.pass; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(7));
        const auto p = random_distribution(n, 10, rng);
        const auto q = random_distribution(n, 10, rng);
        const auto r = random_distribution(n, 10, rng);
        if (tv(p, q) != tv(q, p)) out.fail("symmetry");
        if (tv(p, p) != 0) out.fail("identity");
        if (tv(p, r) > tv(p, q) + tv(q, r)) out.fail("triangle");
    }
    return out;
}

Outcome criterion7_mixture_bound() {
    Outcome out;
    const int n = 6;
    SplitRng rng(707, "acceptance/mixture-bound");
    for (int t = 1; t <= 8 && out.pass; ++t) {
        for (int variant = 0; variant < 3; ++variant) {
            const auto q = make_point(n, 0);
            std::vector<Rat> mix(std::uint64_t{1} << n, Rat(0));
            Rat eps(0);
            for (int i = 0; i < t; ++i) {
                // Component with mass eps_i at q's point, rest elsewhere.
                const long at_q = 1 + static_cast<long>(rng.below(6));
                std::vector<Int> counts(std::uint64_t{1} << n, Int(0));
                counts[0] = at_q;
                counts[1 + rng.below(10)] += 64 - at_q;
                const auto part = ExactDistribution::from_counts(n, counts, Int(64));
                const Rat dist = tv(part, q);
                eps = std::max(eps, Rat(Rat(1) - dist));
                for (std::uint64_t x = 0; x < mix.size(); ++x)
                    mix[x] += part.prob(x) / Rat(t);
            }
            const auto mixture = ExactDistribution::from_probabilities(n, mix);
            if (tv(mixture, q) < Rat(1) - Rat(t) * eps) {
                out.fail("t=" + std::to_string(t));
                break;
            }
        }
    }
    return out;
}

Outcome criterion8_mod_shift() {
    Outcome out;
    for (int t = 1; t <= 8 && out.pass; ++t) {
        for (int q = 2; q <= t + 1 && out.pass; ++q) {
            for (int g = 1; g <= 7; ++g) {
                const Rat gamma = rat(g, 8);
                const auto result = mod_shift_tv(t, gamma, q);
                if (q == 2) {
                    // Exact form of the bound: |1-2 gamma|^(t-1).
                    const Rat exact_bound = rat_pow(rat_abs(Rat(1) - 2 * gamma), t - 1);
                    if (result.exact_tv < exact_bound) {
                        out.fail("q=2 bound t=" + std::to_string(t));
                        break;
                    }
                } else if (to_double(result.exact_tv) < result.lower_bound - 1e-12) {
                    out.fail("bound t=" + std::to_string(t) + " q=" +
                             std::to_string(q) + " g=" + std::to_string(g));
                    break;
                }
                if (t >= 2) {
                    const bool zero = result.exact_tv == 0;
                    const bool should = (q == 2 && gamma == rat(1, 2));
                    if (zero != should) {
                        out.fail("zero-iff t=" + std::to_string(t) + " q=" +
                                 std::to_string(q) + " g=" + std::to_string(g));
                        break;
                    }
                }
            }
        }
    }
    return out;
}

Outcome criterion9_binomial_facts() {
    Outcome out;
    SplitRng rng(909, "acceptance/binomial");
    for (int n = 4; n <= 256 && out.pass; ++n) {
        for (int g = 1; g <= 7; ++g) {
            const Rat gamma = rat(g, 8);
            const auto table = binomial_table(n, gamma);
            const Rat scale = gamma * (Rat(1) - gamma) * Rat(n);
            Rat max_mass(0);
            for (const Rat& mass : table) max_mass = std::max(max_mass, mass);
            if (max_mass * max_mass > Rat(1) / scale) {
                out.fail("point mass n=" + std::to_string(n) + " g=" +
                         std::to_string(g));
                break;
            }
            for (int w = 0; w < n; ++w)
                if (rat_abs(table[w] - table[w + 1]) > Rat(4) / scale) {
                    out.fail("adjacent gap n=" + std::to_string(n));
                    break;
                }
            // One random non-adjacent pair per table.
            const int a = static_cast<int>(rng.below(n + 1));
            const int b = static_cast<int>(rng.below(n + 1));
            if (rat_abs(table[a] - table[b]) >
                Rat(4 * std::abs(a - b)) / scale)
                out.fail("pair gap n=" + std::to_string(n));
        }
    }
    // Cross-check the incremental oracle against the library's table.
    for (int n : {4, 16}) {
        const auto lib = binomial_weights(n, rat(3, 8));
        const auto oracle = binomial_table(n, rat(3, 8));
        for (int w = 0; w <= n; ++w)
            if (lib.prob(w) != oracle[w]) out.fail("table cross-check");
    }
    return out;
}

Outcome criterion10_kolmogorov_sanity() {
    Outcome out;
    for (int n = 8; n <= 64; ++n) {
        const Rat k = kolmogorov(evens_weights(n), binomial_weights(n, rat(1, 2)));
        if (k * k * Rat(n) > 1) {
            out.fail("n=" + std::to_string(n));
            break;
        }
    }
    return out;
}

Outcome criterion11_learner(double* seconds) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    const int n = 16, d = 2;
    const double eps = 0.1;
    LearnConfig config;
    const unsigned grid = effective_grid(d, eps, config.hypothesis_budget);
    const Rat budget = rat(2, 5);  // 4 * eps

    SplitRng rng(1111, "acceptance/learner");
    int good = 0;
    for (int trial = 0; trial < 50; ++trial) {
        // Planted spec on the tournament grid.
        MixtureSpec truth;
        truth.d = d;
        truth.c.assign(truth.slots(), Rat(0));
        std::vector<int> slots = {0, 1, 3, 4};
        std::vector<long> cuts(5);
        for (auto& c : cuts) c = static_cast<long>(rng.below(grid + 1));
        std::sort(cuts.begin(), cuts.end());
        long prev = 0;
        std::vector<long> parts;
        for (long c : cuts) {
            parts.push_back(c - prev);
            prev = c;
        }
        parts.push_back(grid - prev);
        for (size_t j = 0; j < slots.size(); ++j)
            truth.c[slots[j]] = rat(parts[j], grid);
        truth.c_e = rat(parts[4], grid);
        truth.c_o = rat(parts[5], grid);
        truth.validate();

        const auto weights = mixture_weights(truth, n);
        const auto batch = sample_from_weights(weights, 1000, 42000 + trial);
        const auto result = learn(batch, n, d, eps, config);
        if (result.samples_used != 1000) out.fail("sample count");
        const Rat dist = tv(mixture_weights(result.spec, n), weights);
        if (dist <= budget) ++good;
    }
    *seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start)
                   .count();
    if (good < 45)
        out.fail("only " + std::to_string(good) + "/50 trials within 4 eps");
    if (*seconds >= 60.0) out.fail("runtime over budget");
    return out;
}

std::string pipeline_fingerprint(int threads) {
    EnumerationLimits limits;
    limits.threads = threads;
    std::string acc;
    for (int seed = 0; seed < 4; ++seed) {
        const auto f = random_local(6, 9, 2, 9000 + seed);
        const auto dist = output_distribution(f, limits);
        const auto result = classify(f, 2, 2, Rat(-1), 2, limits);
        acc += mixture_to_json(result.spec).dump();
        acc += rat_to_string(result.tv_string) + ";";
        acc += rat_to_string(tv(dist, symmetrize(dist))) + ";";
    }
    const auto learned = learn(build_biased(16, 1, 2), 16, 2, 0.25, 31);
    acc += mixture_to_json(learned.spec).dump();
    acc += std::to_string(learned.max_deviation);
    return acc;
}

Outcome criterion12_determinism() {
    Outcome out;
    const std::string a = pipeline_fingerprint(1);
    const std::string b = pipeline_fingerprint(4);
    const std::string c = pipeline_fingerprint(1);
    if (a != c) out.fail("rerun differs");
    if (a != b) out.fail("thread count changes results");
    return out;
}

}  // namespace

int main() {
    struct Entry {
        int id;
        std::string name;
        Outcome outcome;
        double seconds;
    };
    std::vector<Entry> entries;

    auto run = [&entries](int id, const std::string& name, auto&& fn) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome = fn();
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        entries.push_back({id, name, outcome, seconds});
    };

    run(1, "sampler exactness (n in [2,12], tv = 0)", criterion1_sampler_exactness);
    run(2, "appendix reproduction via verify-example", criterion2_appendix_reproduction);
    run(3, "decompose(profile) identity on 100 mixture specs", criterion3_roundtrip);
    run(4, "classification recovery on 25 blueprints", criterion4_classification_recovery);
    run(5, "evens marginal uniformity (all subsets, n <= 10)", criterion5_kwise_uniformity);
    run(6, "distance inequalities on 1000 random pairs/triples", criterion6_distance_inequalities);
    run(7, "mixture lower bound 1 - t*eps", criterion7_mixture_bound);
    run(8, "modular shift bound and zero case", criterion8_mod_shift);
    run(9, "binomial point-mass and gap facts (n in [4,256])", criterion9_binomial_facts);
    run(10, "kolmogorov sanity: evens vs binomial <= 1/sqrt(n)", criterion10_kolmogorov_sanity);

    {
        double seconds = 0;
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome = criterion11_learner(&seconds);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        entries.push_back({11, "learner recovers planted mixtures (50 trials)",
                           outcome, wall});
    }
    run(12, "seeded pipelines are byte-identical across threads", criterion12_determinism);

    // Criterion 1 carries its own runtime bound.
    if (entries[0].outcome.pass && entries[0].seconds >= 10.0)
        entries[0].outcome.fail("runtime over 10 s");

    int failures = 0;
    for (const auto& entry : entries) {
        const bool pass = entry.outcome.pass;
        if (!pass) ++failures;
        std::printf("criterion %2d: %s  [%6.2fs]  %s%s%s\n", entry.id,
                    pass ? "PASS" : "FAIL", entry.seconds, entry.name.c_str(),
                    entry.outcome.detail.empty() ? "" : " -- ",
                    entry.outcome.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(entries.size()) - failures,
                entries.size());
    return failures;
}
