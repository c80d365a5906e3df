#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nrlab/bits.hpp"
#include "nrlab/tanner.hpp"

namespace nrlab {

struct DecodeOutcome {
    TritWord word;
    int iterations_used = 0;
    bool converged = false;
    size_t residual_erasures = 0;
    size_t residual_errors = 0;  // filled when ground truth is supplied

    // per-iteration edge-message statistics (fractions over all n*dv edges);
    // alpha needs ground truth, beta does not
    std::vector<double> alpha_trace;
    std::vector<double> beta_trace;
};

// Synchronous peeling for the BEC: a check with a single erased neighbour
// resolves it. Implemented as extrinsic message passing so the per-iteration
// edge statistics line up with density evolution.
DecodeOutcome peel_decode(const TannerGraph& graph, const TritWord& word, int max_iters,
                          const BitVec* truth = nullptr);

struct GenDecoderConfig {
    int pi = 1;
    int tau = 1;
    int max_iters = 200;
};

// Generalized error/erasure bit-flipping decoder. Each round recomputes every
// outgoing message from the node's received value and the extrinsic incoming
// messages, so the iteration is stateless in the Gallager sense:
//   erased node:      adopt b when >= pi non-erased messages all say b
//   non-fixed value:  flip when >= tau non-erased messages all disagree
//   fixed node:       never changes
DecodeOutcome generalized_decode(const TannerGraph& graph, const TritWord& word,
                                 const std::vector<uint8_t>& fixed, const GenDecoderConfig& cfg,
                                 const BitVec* truth = nullptr);

struct LlrVector {
    std::vector<double> values;
    double clamp = 30.0;
};

// Flooding sum-product decoder; early exit on zero syndrome. Hard decision by
// total-LLR sign, ties decode to 0.
DecodeOutcome bp_decode(const TannerGraph& graph, const LlrVector& init_llrs, int max_iters,
                        const BitVec* truth = nullptr);

}  // namespace nrlab
