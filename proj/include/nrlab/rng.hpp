#pragma once

#include <cstdint>

namespace nrlab {

// splitmix64: tiny counter-style generator, also used as the seed mixer.
// Chosen over std engines so that streams are bit-stable across platforms.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0,1) with 53 random bits
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool next_bool(double p) { return next_double() < p; }

    // uniform integer in [0, n)
    uint64_t next_below(uint64_t n) {
        // rejection-free is overkill here; modulo bias is < 2^-40 for our n
        return next_u64() % n;
    }

private:
    uint64_t state_;
};

inline uint64_t mix64(uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Stable per-trial seed derivation: hash of (master_seed, stream_id, trial).
// Reproducible no matter in which order trials execute.
inline uint64_t derive_seed(uint64_t master_seed, uint64_t stream_id, uint64_t trial) {
    uint64_t h = mix64(master_seed ^ 0x243f6a8885a308d3ull);
    h = mix64(h ^ (stream_id * 0x9e3779b97f4a7c15ull));
    h = mix64(h ^ (trial * 0xd1b54a32d192ed03ull));
    return h;
}

// stream ids used across the toolkit
namespace stream {
constexpr uint64_t graph = 1;
constexpr uint64_t channel = 2;
constexpr uint64_t lucky = 3;
constexpr uint64_t info = 4;
constexpr uint64_t estimator = 5;
}  // namespace stream

}  // namespace nrlab
