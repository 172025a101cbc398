#pragma once

#include <cstdint>

namespace qnet {

/// splitmix64 finalizer (Steele, Lea, Flood 2014). Bijective on 64-bit
/// words, so distinct inputs give distinct outputs.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of the index-th replicate (or sub-stream) of a run with the given
/// base seed. The mapping is part of the output contract: outputs stay
/// reproducible across releases, and seeds are pairwise distinct because
/// the golden-ratio stride is odd and splitmix64 is a bijection.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64(base + 0x9E3779B97F4A7C15ULL * (index + 1));
}

}  // namespace qnet
