#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace locmix {

// Counter-based splittable generator. Every random choice in the library and
// CLI draws from a stream identified by (seed, purpose label, index), so runs
// are reproducible bit-for-bit regardless of evaluation order or threading.
class SplitRng {
public:
    SplitRng(std::uint64_t seed, std::string_view label);

    std::uint64_t next_u64();

    // Uniform in [0, bound), bound > 0, without modulo bias.
    std::uint64_t below(std::uint64_t bound);

    // Uniform in [0, 1) with 53 random bits.
    double next_unit();

    bool next_bit() { return next_u64() & 1; }

    // Child stream; deterministic function of this stream's identity only.
    SplitRng fork(std::string_view label) const;

    std::uint64_t stream_id() const { return stream_; }

private:
    SplitRng(std::uint64_t stream, std::uint64_t counter)
        : stream_(stream), counter_(counter) {}

    std::uint64_t stream_;
    std::uint64_t counter_;
};

}  // namespace locmix
