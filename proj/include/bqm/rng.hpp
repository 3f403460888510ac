#pragma once

#include <cstdint>

namespace bqm {

/// Counter-based generator: the n-th draw is a SplitMix64 finalizer applied
/// to (key + n * golden). Streams are derived from a parent key and a stream
/// index, so work can be split across workers without changing any draw.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : key_(mix(seed)) {}

    /// Independent child stream; the parent is not advanced.
    CounterRng split(std::uint64_t stream) const
    {
        CounterRng child(0);
        child.key_ = mix(key_ ^ mix(stream + 0xA0761D6478BD642FULL));
        return child;
    }

    std::uint64_t next_u64() { return mix(key_ + (counter_++) * 0x9E3779B97F4A7C15ULL); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (one variate per call).
    double normal();

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t counter() const noexcept { return counter_; }

private:
    static constexpr std::uint64_t mix(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace bqm
