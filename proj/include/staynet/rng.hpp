#pragma once

#include <cstdint>

namespace staynet {

/// SplitMix64 stream. Fully specified integer arithmetic, so sequences are
/// identical on every platform; per-patient substreams derive from
/// (seed, ordinal) and stay stable under parallel generation.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound); bound 0 yields 0. Fixed-point multiply, no
    /// floating point involved.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) return 0;
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    /// Uniform in [lo, hi], inclusive.
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

private:
    std::uint64_t state_;
};

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t ordinal) {
    SplitMix64 mix(seed ^ (0xa0761d6478bd642full + ordinal * 0xe7037ed1a0b428dbull));
    return mix.next();
}

} // namespace staynet
