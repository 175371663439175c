#include "locmix/rng.hpp"

namespace locmix {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer; full-period mix of a 64-bit counter.
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

SplitRng::SplitRng(std::uint64_t seed, std::string_view label)
    : stream_(mix64(mix64(seed + kGolden) ^ fnv1a(label))), counter_(0) {}

std::uint64_t SplitRng::next_u64() {
    return mix64(stream_ + (++counter_) * kGolden);
}

std::uint64_t SplitRng::below(std::uint64_t bound) {
    // Rejection sampling over the largest multiple of bound.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        std::uint64_t r = next_u64();
        if (r >= threshold) return r % bound;
    }
}

double SplitRng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

SplitRng SplitRng::fork(std::string_view label) const {
    return SplitRng(mix64(stream_ ^ fnv1a(label) ^ kGolden), 0);
}

}  // namespace locmix
