#include <doctest.h>

#include <map>

#include "locmix/distribution.hpp"
#include "locmix/local_function.hpp"
#include "locmix/rng.hpp"
#include "locmix/samplers.hpp"

using namespace locmix;

namespace {

// Independent oracle: plain enumeration of all 2^m inputs via evaluate().
std::vector<Rat> enumerate_output(const LocalFunction& f) {
    std::vector<long> counts(std::uint64_t{1} << f.n, 0);
    std::vector<std::uint8_t> x(f.m);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << f.m); ++v) {
        for (int j = 0; j < f.m; ++j) x[j] = (v >> j) & 1;
        const auto y = evaluate(f, x);
        std::uint64_t idx = 0;
        for (int j = 0; j < f.n; ++j) idx |= std::uint64_t{y[j]} << j;
        counts[idx]++;
    }
    std::vector<Rat> probs;
    for (long c : counts) {
        Rat r(Int(c), pow2_int(f.m));
        r.canonicalize();
        probs.push_back(std::move(r));
    }
    return probs;
}

}  // namespace

TEST_CASE("validate accepts builders and reports specific violations") {
    CHECK(validate(build_evens(4)).ok());

    LocalFunction f = build_evens(4);
    f.outputs[1].inputs = {2, 4};  // index m out of range
    auto report = validate(f);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations[0].gate == 1);
    CHECK(report.violations[0].rule == "index out of range");

    LocalFunction g = build_evens(4);
    g.outputs[2].table = {0, 1, 1};  // 2 inputs but 3 table bits
    auto report2 = validate(g);
    REQUIRE_FALSE(report2.ok());
    CHECK(report2.violations[0].rule == "table length");
}

TEST_CASE("evaluate on the parity chain") {
    const LocalFunction f = build_evens(4);
    CHECK(bits_to_string(evaluate(f, bits_from_string("1010"))) == "1111");
    CHECK(bits_to_string(evaluate(f, bits_from_string("0000"))) == "0000");
}

TEST_CASE("evaluate the 3-local and-example by hand") {
    // evens part (x0,x1) = (0,1) gives chain output 11; uniform part y = 10;
    // the AND is 10.
    const LocalFunction f = build_and_example(2);
    CHECK(bits_to_string(evaluate(f, bits_from_string("0110"))) == "10");
}

TEST_CASE("degree profiles") {
    auto evens_deg = degree_profile(build_evens(4));
    for (int d : evens_deg.degrees) CHECK(d == 2);

    auto biased_deg = degree_profile(build_biased(5, 1, 2));
    for (int d : biased_deg.degrees) CHECK(d == 1);

    SamplerBlueprint bp;
    bp.n = 5;
    bp.d = 2;
    bp.selector_bits = 1;
    bp.branches = {BranchSpec::bias(1), BranchSpec::bias(3)};
    auto mix = build_mixture(bp);
    CHECK(degree_profile(mix.function).degrees[0] == 5);  // selector feeds all
}

TEST_CASE("restrict: identity, partial evaluation, slice consistency") {
    const LocalFunction f = build_evens(4);

    LocalFunction same = restrict_inputs(f, {});
    CHECK(local_function_to_json(same) == local_function_to_json(f));

    // Fixing x0 = 1 turns gates 0 and 3 into negations of their survivor.
    LocalFunction g = restrict_inputs(f, {{0, 1}});
    CHECK(g.m == 3);
    CHECK(g.outputs[0].inputs == std::vector<int>{0});
    CHECK(g.outputs[0].table == std::vector<std::uint8_t>{1, 0});
    CHECK(g.outputs[3].inputs == std::vector<int>{2});
    CHECK(g.outputs[3].table == std::vector<std::uint8_t>{1, 0});
    CHECK(g.outputs[1].table == std::vector<std::uint8_t>{0, 1, 1, 0});

    // Conditional slice oracle on a random function.
    const LocalFunction r = random_local(5, 8, 3, 11);
    const std::map<int, int> rho = {{2, 1}, {5, 0}};
    const auto restricted = enumerate_output(restrict_inputs(r, rho));
    // Slice: enumerate all inputs consistent with rho.
    std::vector<Rat> slice(std::uint64_t{1} << r.n, Rat(0));
    std::vector<std::uint8_t> x(r.m);
    long total = 0;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << r.m); ++v) {
        for (int j = 0; j < r.m; ++j) x[j] = (v >> j) & 1;
        bool match = true;
        for (auto& [i, b] : rho)
            if (x[i] != b) match = false;
        if (!match) continue;
        ++total;
        const auto y = evaluate(r, x);
        std::uint64_t idx = 0;
        for (int j = 0; j < r.n; ++j) idx |= std::uint64_t{y[j]} << j;
        slice[idx] += 1;
    }
    for (std::uint64_t y = 0; y < slice.size(); ++y)
        CHECK(restricted[y] == slice[y] / Rat(total));
}

TEST_CASE("error paths: evaluate length, restrict range") {
    const LocalFunction f = build_evens(4);
    CHECK_THROWS_AS(evaluate(f, bits_from_string("101")), InputError);
    CHECK_THROWS_AS(restrict_inputs(f, {{7, 0}}), InputError);
    CHECK_THROWS_AS(restrict_inputs(f, {{1, 2}}), InputError);
}

TEST_CASE("restriction composition on random disjoint assignments") {
    for (int seed = 0; seed < 10; ++seed) {
        const LocalFunction f = random_local(5, 10, 3, 800 + seed);
        SplitRng rng(seed, "compose");
        // Disjoint assignment sets in original ids.
        std::map<int, int> first, second, merged;
        for (int i = 0; i < f.m; ++i) {
            const auto roll = rng.below(4);
            if (roll == 0)
                first[i] = static_cast<int>(rng.below(2));
            else if (roll == 1)
                second[i] = static_cast<int>(rng.below(2));
        }
        merged = first;
        merged.insert(second.begin(), second.end());

        // Renumber the second assignment into post-first coordinates.
        std::map<int, int> second_renumbered;
        for (const auto& [i, b] : second) {
            int offset = 0;
            for (const auto& [j, unused] : first)
                if (j < i) ++offset;
            second_renumbered[i - offset] = b;
        }
        const LocalFunction two_step =
            restrict_inputs(restrict_inputs(f, first), second_renumbered);
        const LocalFunction one_step = restrict_inputs(f, merged);
        CHECK(local_function_to_json(two_step) == local_function_to_json(one_step));
    }
}

TEST_CASE("restriction composes and commutes with evaluate") {
    const LocalFunction f = random_local(6, 9, 3, 5);

    LocalFunction two_step =
        restrict_inputs(restrict_inputs(f, {{1, 0}, {4, 1}}), {{3, 1}});
    // After removing {1,4}, original index 6 sits at position... composition
    // must match the one-shot restriction on the union.
    // restrict renumbers order-preservingly: {1,4} removed, survivor ids are
    // 0,2,3,5,6,7,8 -> 0..6, so one-shot index for two-step's 3 is 5.
    LocalFunction one_step = restrict_inputs(f, {{1, 0}, {4, 1}, {5, 1}});
    CHECK(local_function_to_json(two_step) == local_function_to_json(one_step));

    const LocalFunction g = restrict_inputs(f, {{0, 1}, {7, 0}});
    std::vector<std::uint8_t> x(g.m);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << g.m); ++v) {
        for (int j = 0; j < g.m; ++j) x[j] = (v >> j) & 1;
        // Merge rho with x back into a full assignment.
        std::vector<std::uint8_t> full(f.m);
        int next = 0;
        for (int i = 0; i < f.m; ++i) {
            if (i == 0)
                full[i] = 1;
            else if (i == 7)
                full[i] = 0;
            else
                full[i] = x[next++];
        }
        CHECK(evaluate(g, x) == evaluate(f, full));
    }
}

TEST_CASE("degree conservation") {
    const LocalFunction f = random_local(7, 10, 3, 99);
    long fan_in = 0;
    for (const auto& gate : f.outputs) fan_in += gate.fan_in();
    CHECK(degree_profile(f).total() == fan_in);
    CHECK(fan_in == 7 * 3);  // exact fan-in d per gate
}

TEST_CASE("random_local is deterministic and valid") {
    const LocalFunction a = random_local(8, 12, 3, 1234);
    const LocalFunction b = random_local(8, 12, 3, 1234);
    CHECK(local_function_to_json(a) == local_function_to_json(b));
    CHECK(validate(a).ok());
    CHECK_THROWS_AS(random_local(4, 3, 5, 1), PreconditionError);  // d > m
}

TEST_CASE("function JSON round trip is bit-identical") {
    const LocalFunction f = random_local(5, 9, 2, 77);
    const auto j = local_function_to_json(f);
    const LocalFunction g = local_function_from_json(j);
    CHECK(local_function_to_json(g) == j);
}
