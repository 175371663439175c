#include <doctest.h>

#include <bit>

#include "locmix/decompose.hpp"
#include "locmix/mixture.hpp"
#include "locmix/moments.hpp"
#include "locmix/rng.hpp"
#include "locmix/samplers.hpp"
#include "locmix/simplex.hpp"

using namespace locmix;

namespace {

Rat rat(long num, long den) {
    Rat r{Int(num), Int(den)};
    r.canonicalize();
    return r;
}

MixtureSpec random_mixture(int d, int granularity, SplitRng& rng) {
    // Uniform composition of 2^C over the coefficient slots.
    MixtureSpec spec;
    spec.d = d;
    spec.granularity_log2 = granularity;
    spec.c.assign(spec.slots(), Rat(0));
    std::vector<int> slots;
    for (int a = 0; a < spec.slots(); ++a)
        if (!spec.has_half_slot() || a != spec.half_slot()) slots.push_back(a);
    const int k = static_cast<int>(slots.size()) + 2;
    const long total = 1L << granularity;
    // Stars and bars: k-1 sorted cuts in [0, total].
    std::vector<long> cuts(k - 1);
    for (auto& c : cuts) c = static_cast<long>(rng.below(total + 1));
    std::sort(cuts.begin(), cuts.end());
    std::vector<long> parts;
    long prev = 0;
    for (long c : cuts) {
        parts.push_back(c - prev);
        prev = c;
    }
    parts.push_back(total - prev);
    for (size_t j = 0; j < slots.size(); ++j)
        spec.c[slots[j]] = rat(parts[j], total);
    spec.c_e = rat(parts[slots.size()], total);
    spec.c_o = rat(parts[slots.size() + 1], total);
    spec.validate();
    return spec;
}

}  // namespace

TEST_CASE("parity moments of the named distributions") {
    const int n = 8;
    const auto quarter = weight_distribution(make_biased_product(n, rat(1, 4)));
    for (int s = 0; s <= n; ++s) CHECK(parity_moment(quarter, s) == dyadic(1, s));

    const auto evens = weight_distribution(make_evens(n));
    for (int s = 1; s < n; ++s) CHECK(parity_moment(evens, s) == 0);
    CHECK(parity_moment(evens, n) == 1);
    const auto odds = weight_distribution(make_odds(n));
    CHECK(parity_moment(odds, n) == -1);

    const auto uniform = weight_distribution(make_uniform(n));
    for (int s = 1; s <= n; ++s) CHECK(parity_moment(uniform, s) == 0);
}

TEST_CASE("dense and Krawtchouk moment paths agree on symmetric inputs") {
    SplitRng rng(5, "moments");
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(4));
        const auto f = random_local(n, n + 2, 2, 1000 + trial);
        const auto sym = symmetrize(output_distribution(f));
        for (int s = 0; s <= n; ++s)
            CHECK(parity_moment_dense(sym, s) ==
                  parity_moment(weight_distribution(sym), s));
    }
}

TEST_CASE("moment profile of the signed example") {
    const auto profile = moment_profile(signed_example(2));
    CHECK(profile.moments[0] == 1);
    CHECK(profile.moments[1] == rat(1, 2));
    CHECK(profile.moments[2] == rat(1, 2));
}

TEST_CASE("half evens plus half odds has the uniform profile") {
    const int n = 6;
    std::vector<Rat> mixed(n + 1);
    const auto e = evens_weights(n);
    const auto o = odds_weights(n);
    for (int w = 0; w <= n; ++w) mixed[w] = (e.prob(w) + o.prob(w)) / 2;
    const auto profile =
        moment_profile(WeightDistribution::from_probabilities(n, mixed));
    CHECK(profile.moments[0] == 1);
    for (int s = 1; s <= n; ++s) CHECK(profile.moments[s] == 0);
}

TEST_CASE("moments multiply over products and mix linearly") {
    // Product: dense moment of a product distribution over split anchors.
    const auto p = make_biased_product(3, rat(1, 4));
    const auto q = make_biased_product(2, rat(3, 4));
    std::vector<Rat> joint(1 << 5);
    for (std::uint64_t x = 0; x < 8; ++x)
        for (std::uint64_t y = 0; y < 4; ++y)
            joint[x | (y << 3)] = p.prob(x) * q.prob(y);
    const auto prod = ExactDistribution::from_probabilities(5, joint);
    // chi over the first 4 coordinates = chi_{first 3} * chi_{4th}.
    CHECK(parity_moment_dense(prod, 4) ==
          parity_moment_dense(p, 3) * parity_moment_dense(q, 1));

    // Mixture linearity at the weight level.
    const auto w1 = weight_distribution(make_evens(6));
    const auto w2 = binomial_weights(6, rat(1, 4));
    std::vector<Rat> mixed(7);
    for (int w = 0; w <= 6; ++w)
        mixed[w] = rat(1, 3) * w1.prob(w) + rat(2, 3) * w2.prob(w);
    const auto mix = WeightDistribution::from_probabilities(6, mixed);
    for (int s = 0; s <= 6; ++s)
        CHECK(parity_moment(mix, s) == rat(1, 3) * parity_moment(w1, s) +
                                           rat(2, 3) * parity_moment(w2, s));
}

TEST_CASE("vandermonde recovers the quarter-biased product") {
    const int n = 8;
    const auto profile = moment_profile(make_biased_product(n, rat(1, 4)));
    const auto spec = vandermonde_decompose(profile, 2);
    CHECK(spec.c[1] == 1);
    CHECK(spec.c[0] == 0);
    CHECK(spec.c[3] == 0);
    CHECK(spec.c[4] == 0);
    CHECK(spec.c_e == 0);
    CHECK(spec.c_o == 0);
    CHECK(check_convexity(spec).representable);
}

TEST_CASE("vandermonde exposes the signed example's negative odds weight") {
    for (int n : {4, 6, 9}) {
        const auto profile = moment_profile(signed_example(n));
        const auto spec = vandermonde_decompose(profile, 2);
        CHECK(spec.c[1] == 1);
        CHECK(spec.c_e == dyadic(1, n + 1));
        CHECK(spec.c_o == -dyadic(1, n + 1));
        const auto convexity = check_convexity(spec);
        CHECK_FALSE(convexity.representable);
        CHECK(convexity.witness_name == "c_o");
        CHECK(convexity.witness == -dyadic(1, n + 1));
    }
}

TEST_CASE("decompose of profile is the identity on mixture specs") {
    SplitRng rng(31337, "roundtrip");
    for (int trial = 0; trial < 25; ++trial) {
        const int d = static_cast<int>(rng.below(4));
        const int c = 1 + static_cast<int>(rng.below(6));
        const auto spec = random_mixture(d, c, rng);
        const auto weights = mixture_weights(spec, 16);
        const auto recovered = vandermonde_decompose(moment_profile(weights), d);
        CHECK(same_coefficients(spec, recovered));
        CHECK(check_convexity(recovered).representable);
    }
}

TEST_CASE("decompose requires enough coordinates") {
    const auto profile = moment_profile(make_uniform(3));
    CHECK_THROWS_AS(vandermonde_decompose(profile, 2), PreconditionError);
}

TEST_CASE("simplex solver basics") {
    // min x0 subject to x0 + x1 = 1.
    LpProblem lp;
    lp.rows = {{Rat(1), Rat(1)}};
    lp.rhs = {Rat(1)};
    lp.objective = {Rat(1), Rat(0)};
    auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpSolution::Status::optimal);
    CHECK(sol.objective == 0);
    CHECK(sol.x[1] == 1);

    // Infeasible: x0 = -1.
    LpProblem bad;
    bad.rows = {{Rat(1)}};
    bad.rhs = {Rat(-1)};
    bad.objective = {Rat(1)};
    CHECK(solve_lp(bad).status == LpSolution::Status::infeasible);

    // Unbounded: min -x0 with x0 - x1 = 0.
    LpProblem unb;
    unb.rows = {{Rat(1), Rat(-1)}};
    unb.rhs = {Rat(0)};
    unb.objective = {Rat(-1), Rat(0)};
    CHECK(solve_lp(unb).status == LpSolution::Status::unbounded);

    // Redundant rows must not confuse phase 2.
    LpProblem red;
    red.rows = {{Rat(1), Rat(1)}, {Rat(2), Rat(2)}};
    red.rhs = {Rat(1), Rat(2)};
    red.objective = {Rat(-1), Rat(1)};
    auto sol2 = solve_lp(red);
    REQUIRE(sol2.status == LpSolution::Status::optimal);
    CHECK(sol2.x[0] == 1);
    CHECK(sol2.objective == -1);
}

TEST_CASE("mixture JSON round trip keeps exact coefficients") {
    SplitRng rng(777, "mixjson");
    for (int trial = 0; trial < 10; ++trial) {
        const int d = static_cast<int>(rng.below(3));
        const auto spec = random_mixture(d, 1 + static_cast<int>(rng.below(5)), rng);
        const auto j = mixture_to_json(spec);
        const auto back = mixture_from_json(j);
        CHECK(same_coefficients(spec, back));
        CHECK(back.granularity_log2 == spec.granularity_log2);
    }
}

TEST_CASE("nearest mixture on exact family members") {
    const auto quarter = make_biased_product(8, rat(1, 4));
    const auto fit = nearest_mixture(quarter, 2);
    CHECK(fit.tv == 0);
    CHECK(fit.spec.c[1] == 1);

    const auto evens_fit = nearest_mixture(make_evens(8), 2);
    CHECK(evens_fit.tv == 0);
    CHECK(evens_fit.spec.c_e == 1);
}

TEST_CASE("nearest mixture on the signed example") {
    const int n = 8;
    const auto p = signed_example(n);
    const auto fit = nearest_mixture(p, 2, FitLevel::string);
    // Dropping the signed correction costs at most 2^-(n+1); the distribution
    // is not in the family (negative odds weight), so the optimum is positive.
    CHECK(fit.tv > 0);
    CHECK(fit.tv <= dyadic(1, n + 1));

    // The reported objective matches an independent tv evaluation.
    CHECK(fit.tv == tv(p, mixture_strings(fit.spec, n)));

    // No simplex vertex does better.
    for (const auto& [name, unused] : fit.spec.named_coefficients()) {
        MixtureSpec vertex;
        vertex.d = 2;
        vertex.c.assign(vertex.slots(), Rat(0));
        if (name == "c_e")
            vertex.c_e = 1;
        else if (name == "c_o")
            vertex.c_o = 1;
        else
            vertex.c[std::stoi(name.substr(2))] = 1;
        CHECK(fit.tv <= tv(p, mixture_strings(vertex, n)));
    }
}

TEST_CASE("string-level fit of a non-symmetric distribution") {
    // Two coordinates biased differently; best symmetric mixture is strictly
    // worse at string level than the weight-level view alone would suggest.
    std::vector<Rat> probs(1 << 2);
    const auto a = make_biased_product(1, rat(1, 4));
    const auto b = make_biased_product(1, rat(3, 4));
    for (std::uint64_t x = 0; x < 2; ++x)
        for (std::uint64_t y = 0; y < 2; ++y)
            probs[x | (y << 1)] = a.prob(x) * b.prob(y);
    const auto p = ExactDistribution::from_probabilities(2, probs);
    REQUIRE_FALSE(p.is_symmetric());

    const auto fit = nearest_mixture(p, 1, FitLevel::string);
    CHECK(fit.tv == tv(p, mixture_strings(fit.spec, 2)));
    const auto weight_fit = nearest_mixture(p, 1, FitLevel::weight);
    CHECK(weight_fit.tv <= fit.tv);
}
