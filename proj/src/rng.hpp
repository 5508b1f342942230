#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ccbs {

/// SplitMix64 (Steele/Lea/Vigna, the engine behind Java's SplittableRandom).
/// Pinned so that transcripts are reproducible across implementations:
///   next():  s += 0x9E3779B97F4A7C15;
///            z = s; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9;
///            z = (z ^ z>>27) * 0x94D049BB133111EB; return z ^ z>>31;
///   split(): a child generator seeded with next().
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    SplitMix64 split() { return SplitMix64(next()); }

    /// Fills `out` with the little-endian byte stream of successive next()
    /// outputs, truncated to the requested length.
    void fill_bytes(std::span<uint8_t> out) {
        size_t i = 0;
        while (i < out.size()) {
            uint64_t w = next();
            for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
                out[i] = static_cast<uint8_t>(w >> (8 * b));
            }
        }
    }

    /// Uniform value in [0, bound) via modulo reduction (bound >= 1).
    uint64_t next_below(uint64_t bound) { return next() % bound; }

private:
    uint64_t state_;
};

/// Rolling 64-bit FNV-1a checksum. Regression pinning, not cryptographic.
class Fnv1a64 {
public:
    void update(std::span<const uint8_t> bytes) {
        for (uint8_t b : bytes) {
            hash_ ^= b;
            hash_ *= 0x100000001B3ULL;
        }
    }

    uint64_t value() const { return hash_; }

private:
    uint64_t hash_ = 0xCBF29CE484222325ULL;
};

inline uint64_t fnv1a64(std::span<const uint8_t> bytes) {
    Fnv1a64 h;
    h.update(bytes);
    return h.value();
}

}  // namespace ccbs
