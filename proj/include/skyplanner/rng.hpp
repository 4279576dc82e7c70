#pragma once

#include <cstdint>
#include <random>

namespace skyplanner {

// Named random streams. Each stream gets its own engine so that extra draws
// in one never shift the sequence of another.
enum class Stream : std::uint64_t {
    kTbs = 1,
    kClusters1 = 2,
    kClusters2 = 3,
    kDevices = 4,
    kFading = 5,
    kTrial = 6,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Counter-based seed derivation: (root, tag, index) -> independent seed.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t tag,
                                    std::uint64_t index = 0) noexcept {
    return splitmix64(splitmix64(splitmix64(root) ^ (tag * 0xD1B54A32D192ED03ULL)) + index);
}

using Engine = std::mt19937_64;

inline Engine make_stream(std::uint64_t root, Stream stream, std::uint64_t index = 0) {
    return Engine(derive_seed(root, static_cast<std::uint64_t>(stream), index));
}

/// Seed of trial `trial` under experiment root seed `root`.
constexpr std::uint64_t trial_seed(std::uint64_t root, std::uint64_t trial) noexcept {
    return derive_seed(root, static_cast<std::uint64_t>(Stream::kTrial), trial);
}

}  // namespace skyplanner
