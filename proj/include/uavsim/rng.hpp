#pragma once

#include <cstdint>

namespace uavsim {

// Counter-based generator: draw i of stream (seed, stream) is a SplitMix64
// finaliser applied to key + (i + 1) * golden. Independent streams per
// entity mean adding an entity never shifts another entity's draws, and the
// sequence is identical on every platform.
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::uint64_t stream) : key_(mix(seed ^ mix(stream + 0x632BE59BD9B4E019ULL))) {}

    std::uint64_t nextU64() { return mix(key_ + (++counter_) * kGolden); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(nextU64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi); returns lo when the interval is empty.
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    [[nodiscard]] std::uint64_t counter() const { return counter_; }

    static constexpr std::uint64_t mix(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
    std::uint64_t key_;
    std::uint64_t counter_{0};
};

}  // namespace uavsim
