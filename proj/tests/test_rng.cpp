#include <doctest.h>

#include <set>

#include "locmix/rng.hpp"

using namespace locmix;

TEST_CASE("streams are deterministic and label-separated") {
    SplitRng a(42, "x");
    SplitRng b(42, "x");
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    SplitRng c(42, "y");
    SplitRng d(43, "x");
    CHECK(SplitRng(42, "x").next_u64() != c.next_u64());
    CHECK(SplitRng(42, "x").next_u64() != d.next_u64());

    SplitRng fork1 = SplitRng(7, "root").fork("child");
    SplitRng fork2 = SplitRng(7, "root").fork("child");
    CHECK(fork1.next_u64() == fork2.next_u64());
}

TEST_CASE("below stays in range and hits all residues") {
    SplitRng rng(1, "below");
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
        std::uint64_t v = rng.below(7);
        CHECK(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
}

TEST_CASE("next_unit lies in [0,1)") {
    SplitRng rng(1, "unit");
    for (int i = 0; i < 1000; ++i) {
        double u = rng.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}
