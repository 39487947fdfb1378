// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>

namespace extremaldep {

// splitmix64: tiny, fast, and bit-identical on every platform, which the
// rerun-determinism guarantees depend on.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on the open interval (0,1): 53 random bits, offset by half an ulp.
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    bool next_coin() { return (next_u64() & 1ULL) != 0; }

private:
    std::uint64_t state_;
};

// Avalanche-mix a (seed, stream) pair into an independent sub-seed, so
// replication r of a run always sees the same values no matter how the
// replications are scheduled across threads.
[[nodiscard]] inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed ^ (stream * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

[[nodiscard]] inline SplitMix64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
    return SplitMix64(mix_seed(seed, stream));
}

}  // namespace extremaldep
