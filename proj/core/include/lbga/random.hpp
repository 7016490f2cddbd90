#pragma once

#include <cstdint>
#include <initializer_list>

namespace lbga {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based SplitMix64 stream: draw i is mix64(key + (i+1)·golden).
/// Every random decision in the project goes through this type, so results
/// depend only on (key, index) and never on evaluation order or platform.
class RandomStream {
public:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    constexpr explicit RandomStream(std::uint64_t key) : key_(key) {}

    /// Derives an independent key from this stream's key and some tags.
    constexpr RandomStream substream(std::initializer_list<std::uint64_t> tags) const {
        std::uint64_t k = key_;
        for (std::uint64_t t : tags) {
            k = mix64(k ^ mix64(t + kGolden));
        }
        return RandomStream(k);
    }

    constexpr std::uint64_t bits(std::uint64_t index) const {
        return mix64(key_ + (index + 1) * kGolden);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform(std::uint64_t index) const {
        return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
    }

    constexpr bool bernoulli(std::uint64_t index, double p) const { return uniform(index) < p; }

    constexpr std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
};

/// Stream tags, kept distinct so data generation and learning never share draws.
namespace stream_tag {
inline constexpr std::uint64_t kLayer = 0x4c41594552ULL;
inline constexpr std::uint64_t kCandidate = 0x43414e44ULL;
} // namespace stream_tag

} // namespace lbga
