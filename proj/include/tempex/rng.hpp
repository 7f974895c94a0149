#pragma once

#include <cstdint>

namespace tempex {

// 64-bit finalizer (murmur3 fmix64). Bijective on uint64.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
}

/// Keyed counter-based pseudorandom function: value i of the stream keyed by
/// `seed`. Pure, O(1) random access, identical on all platforms.
inline std::uint64_t prf(std::uint64_t seed, std::uint64_t counter) {
    return mix64(seed ^ mix64(counter * 0x9e3779b97f4a7c15ULL + 0xd1b54a32d192ed03ULL));
}

/// Derived seed for an independent sub-stream (trial, source, policy, ...):
/// seed XOR (index times a fixed odd constant).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream_index) {
    return seed ^ (stream_index * 0x9e3779b97f4a7c15ULL);
}

/// Sequential convenience wrapper over the counter-based stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64() { return prf(seed_, ++counter_); }

    std::uint32_t next_u32() { return static_cast<std::uint32_t>(next_u64()); }

    /// Uniform in [lo, hi], inclusive. Modulo bias is negligible for the
    /// small ranges used here (test generators, policy randomness).
    int next_int(int lo, int hi) {
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool next_bool() { return (next_u64() & 1u) != 0; }

    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace tempex
