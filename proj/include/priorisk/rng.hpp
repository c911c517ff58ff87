#pragma once

#include <cstdint>
#include <initializer_list>

namespace priorisk {

// Algorithm identifier recorded in every Monte Carlo estimate.
inline constexpr const char* kRngAlgorithm = "splitmix64";

// SplitMix64 (Steele/Lea/Flood). Seeding is O(1), so every replicate of a
// Monte Carlo loop can run on its own substream; results are then identical
// no matter how the loop is partitioned across workers.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    uint64_t state_;
};

namespace detail {
inline uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
}  // namespace detail

// Deterministic substream derivation: folds each path component (replicate
// index, grid index, ...) into the root seed.
inline uint64_t derive_seed(uint64_t root, std::initializer_list<uint64_t> path) {
    uint64_t s = detail::mix64(root + 0x9E3779B97F4A7C15ULL);
    for (uint64_t c : path) s = detail::mix64(s ^ (c + 0x632BE59BD9B4E019ULL));
    return s;
}

}  // namespace priorisk
