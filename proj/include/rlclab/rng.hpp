#pragma once

#include <cstdint>

namespace rlclab {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Counter-based pseudo-random stream built on the SplitMix64 finalizer:
/// output i is splitmix64_mix(key + i * golden), so a stream is a pure
/// function of its key and every draw is reproducible across platforms.
/// Child streams are derived by hashing (key, id); distinct ids give
/// statistically independent streams. Not cryptographic.
class RngStream {
public:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

    explicit RngStream(std::uint64_t key) : key_(key) {}

    static std::uint64_t derive(std::uint64_t key, std::uint64_t id) {
        return splitmix64_mix(splitmix64_mix(key + kGolden) ^
                              splitmix64_mix(id ^ 0x5851F42D4C957F2Dull));
    }

    RngStream child(std::uint64_t id) const {
        return RngStream(derive(key_, id));
    }

    std::uint64_t key() const { return key_; }

    std::uint64_t next_u64() { return splitmix64_mix(key_ + ++counter_ * kGolden); }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n), unbiased (Lemire with rejection).
    std::uint64_t next_below(std::uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace rlclab
