#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace halves::rng {

// xoshiro256** with splitmix64 seeding. Self-contained so that shuffle
// streams are bit-identical across platforms and standard libraries.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed);

    std::uint64_t next();

    // Uniform integer in [0, bound), bound >= 1. Rejection sampling,
    // no modulo bias.
    std::uint64_t bounded(std::uint64_t bound);

    // Uniform double in [0, 1).
    double uniform01();

private:
    std::uint64_t state_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

// Derives the deterministic stream key for (seed, document id, repetition).
std::uint64_t stream_key(std::uint64_t seed, std::string_view doc_id, std::uint64_t repetition);

} // namespace halves::rng
