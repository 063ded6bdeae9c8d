#pragma once

#include <cstdint>

namespace bmcm {

/// SplitMix64 generator (Steele/Lea/Flood constants). The output stream for
/// a given seed is fully determined by the constants below, so generated
/// datasets and sampled trials replicate bit-for-bit across platforms.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Fair coin: high bit of the next output word.
    constexpr bool next_bit() { return (next() >> 63) != 0; }

    /// Uniform draw in [0, bound). Plain modulo; the bias of bound/2^64 is
    /// far below anything observable at the shuffle sizes used here.
    constexpr std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

/// One SplitMix64 finalizer pass over a pair of words. Used to derive an
/// independent stream key per (seed, row, trial) so that sampled tallies do
/// not depend on scheduling or thread count.
constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace bmcm
