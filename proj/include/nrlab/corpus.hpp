#pragma once

#include <cstdint>
#include <string>

#include "nrlab/bits.hpp"

namespace nrlab {

struct CorpusParams {
    size_t target_chars = 1 << 22;
    uint64_t seed = 1;
};

// Deterministic English-like text: Zipf-weighted vocabulary, topic-biased
// paragraphs, recurring two-word phrases. Lowercase letters, spaces and
// basic punctuation only.
Bytes generate_corpus(const CorpusParams& params);

}  // namespace nrlab
