#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nrlab/bits.hpp"
#include "nrlab/decoders.hpp"
#include "nrlab/lexicon.hpp"
#include "nrlab/lzw.hpp"
#include "nrlab/nr_decoder.hpp"
#include "nrlab/systematic.hpp"

namespace nrlab {

struct SoftEstimate {
    std::vector<double> q;  // P(info bit i = 1), entries in [0,1]
};

// Stand-in for a learned soft estimator: either uninformative (q = 1/2) or a
// two-point oracle of accuracy a that peeks at the true bits.
struct SoftEstimatorSpec {
    enum class Kind { uninformative, oracle } kind = Kind::uninformative;
    double accuracy = 0.5;  // in [0.5, 1]
    uint64_t seed = 0;

    static SoftEstimatorSpec uninformative() { return {}; }
    static SoftEstimatorSpec oracle(double a, uint64_t seed = 0);
};

SoftEstimate run_estimator(const SoftEstimatorSpec& spec, const BitVec& true_info);

// LLR^est_i = ln((1-q_i)/q_i), with q clamped to [q_floor, 1-q_floor]
std::vector<double> q_to_llr(const SoftEstimate& est, double q_floor = 1e-6);

// channel LLRs for a BSC: +ln((1-p)/p) on a received 0, the negative on a 1
LlrVector channel_llr(const BitVec& word, double p, double clamp = 30.0);

// sum on information positions, pass-through on parity, clamp afterwards
LlrVector combine_llrs(const LlrVector& channel, const std::vector<double>& est_llrs,
                       const std::vector<uint32_t>& info_positions);

// ---------------------------------------------------------------------------
// Decoding schemes
// ---------------------------------------------------------------------------

struct SequentialResult {
    DecodeOutcome outcome;
    NrReport nr_report;
};

// text decoder on the information bits first, then the generalized
// error/erasure decoder over the whole word with channel-known bits fixed
SequentialResult sequential_nr_ldpc(const TritWord& word, const SystematicCode& code,
                                    const LzwDictionary& dict, const Lexicon& lex,
                                    const WindowParams& wparams, const GenDecoderConfig& gcfg,
                                    const BitVec* truth = nullptr);

// segment oracle: called at most once per segment, when its erasure count
// first drops to <= l_theta; returning true corrects the whole segment
using SegmentOracle = std::function<bool(uint32_t segment_index)>;

struct IterativeResult {
    DecodeOutcome outcome;
    std::vector<std::pair<double, double>> trajectory;  // (eps, eps_prime) per iteration
    size_t oracle_calls = 0;
};

IterativeResult iterative_nr_ldpc(const TritWord& word, const SystematicCode& code,
                                  const BitVec& truth, const SegmentOracle& oracle, int l,
                                  int l_theta, int max_iters);

// BSC pipeline: channel LLRs + estimator LLRs on information bits, then BP
DecodeOutcome bsc_nr_ldpc(const BitVec& received, const SystematicCode& code,
                          const SoftEstimatorSpec& est_spec, double p, const BitVec& true_info,
                          int max_iters = 100);

}  // namespace nrlab
