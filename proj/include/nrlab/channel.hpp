#pragma once

#include <cstdint>
#include <stdexcept>

#include "nrlab/bits.hpp"

namespace nrlab {

struct ChannelSpec {
    enum class Kind { bec, bsc } kind;
    double rate;  // erasure probability for BEC, crossover for BSC

    static ChannelSpec bec(double eps0) {
        if (eps0 < 0.0 || eps0 > 1.0) throw std::invalid_argument("bec: eps0 outside [0,1]");
        return {Kind::bec, eps0};
    }
    static ChannelSpec bsc(double p) {
        if (p < 0.0 || p > 0.5) throw std::invalid_argument("bsc: p outside [0,0.5]");
        return {Kind::bsc, p};
    }
};

// Memoryless per-bit channel; deterministic for a given seed.
TritWord transmit(const BitVec& word, const ChannelSpec& ch, uint64_t seed);

}  // namespace nrlab
