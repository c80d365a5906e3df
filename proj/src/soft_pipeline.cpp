#include "nrlab/soft_pipeline.hpp"

#include <cmath>
#include <stdexcept>

#include "nrlab/rng.hpp"

namespace nrlab {

SoftEstimatorSpec SoftEstimatorSpec::oracle(double a, uint64_t seed) {
    if (a < 0.5 || a > 1.0) throw std::invalid_argument("estimator: accuracy outside [0.5,1]");
    SoftEstimatorSpec s;
    s.kind = Kind::oracle;
    s.accuracy = a;
    s.seed = seed;
    return s;
}

SoftEstimate run_estimator(const SoftEstimatorSpec& spec, const BitVec& true_info) {
    SoftEstimate est;
    est.q.resize(true_info.size());
    if (spec.kind == SoftEstimatorSpec::Kind::uninformative) {
        for (auto& q : est.q) q = 0.5;
    } else {
        for (size_t i = 0; i < true_info.size(); ++i)
            est.q[i] = true_info.get(i) ? spec.accuracy : 1.0 - spec.accuracy;
    }
    return est;
}

std::vector<double> q_to_llr(const SoftEstimate& est, double q_floor) {
    if (q_floor <= 0.0 || q_floor >= 0.5) throw std::invalid_argument("q_to_llr: q_floor outside (0,0.5)");
    std::vector<double> out(est.q.size());
    for (size_t i = 0; i < est.q.size(); ++i) {
        double q = est.q[i];
        if (q < 0.0 || q > 1.0) throw std::invalid_argument("q_to_llr: q outside [0,1]");
        q = std::min(1.0 - q_floor, std::max(q_floor, q));
        out[i] = std::log((1.0 - q) / q);
    }
    return out;
}

LlrVector channel_llr(const BitVec& word, double p, double clamp) {
    if (p <= 0.0 || p >= 0.5) throw std::invalid_argument("channel_llr: p outside (0,0.5)");
    double mag = std::log((1.0 - p) / p);
    mag = std::min(mag, clamp);
    LlrVector out;
    out.clamp = clamp;
    out.values.resize(word.size());
    for (size_t i = 0; i < word.size(); ++i) out.values[i] = word.get(i) ? -mag : mag;
    return out;
}

LlrVector combine_llrs(const LlrVector& channel, const std::vector<double>& est_llrs,
                       const std::vector<uint32_t>& info_positions) {
    if (est_llrs.size() != info_positions.size())
        throw std::invalid_argument("combine_llrs: estimator length != info positions");
    LlrVector out = channel;
    for (size_t i = 0; i < info_positions.size(); ++i) {
        uint32_t pos = info_positions[i];
        if (pos >= out.values.size()) throw std::invalid_argument("combine_llrs: position out of range");
        out.values[pos] += est_llrs[i];
    }
    for (double& v : out.values) v = std::min(out.clamp, std::max(-out.clamp, v));
    return out;
}

SequentialResult sequential_nr_ldpc(const TritWord& word, const SystematicCode& code,
                                    const LzwDictionary& dict, const Lexicon& lex,
                                    const WindowParams& wparams, const GenDecoderConfig& gcfg,
                                    const BitVec* truth) {
    if (word.size() != code.n()) throw std::invalid_argument("sequential: word length != n");
    const auto& info_pos = code.info_positions();
    // the text decoder works on whole codewords; a ragged tail (possible when
    // rank deficiency shifts k) is left to the LDPC stage
    size_t k = info_pos.size() - info_pos.size() % size_t(dict.ell());

    TritWord info(k);
    for (size_t i = 0; i < k; ++i) info.set(i, word.get(info_pos[i]));
    BitVec info_truth;
    if (truth) {
        info_truth = BitVec(k);
        for (size_t i = 0; i < k; ++i) info_truth.set(i, truth->get(info_pos[i]));
    }
    NrDecodeResult nr = nr_decode(info, dict, lex, wparams, truth ? &info_truth : nullptr);

    TritWord patched = word;
    for (size_t i = 0; i < k; ++i) patched.set(info_pos[i], nr.word.get(i));

    std::vector<uint8_t> fixed(code.n(), 0);
    for (size_t i = 0; i < code.n(); ++i) fixed[i] = !word.is_erased(i);

    SequentialResult res;
    res.nr_report = nr.report;
    res.outcome = generalized_decode(code.graph(), patched, fixed, gcfg, truth);
    return res;
}

IterativeResult iterative_nr_ldpc(const TritWord& word, const SystematicCode& code,
                                  const BitVec& truth, const SegmentOracle& oracle, int l,
                                  int l_theta, int max_iters) {
    const TannerGraph& g = code.graph();
    if (word.size() != g.n) throw std::invalid_argument("iterative: word length != n");
    size_t k = code.info_positions().size();
    if (k % size_t(l) != 0)
        throw std::invalid_argument("iterative: k does not split into whole l-bit segments");
    size_t nseg = k / size_t(l);
    const auto& info_pos = code.info_positions();

    std::vector<uint8_t> erased(g.n);
    for (uint32_t v = 0; v < g.n; ++v) erased[v] = word.is_erased(v);

    std::vector<uint8_t> attempted(nseg, 0);
    IterativeResult res;
    std::vector<uint8_t> resolve(g.n);
    size_t remaining = 0;
    for (uint32_t v = 0; v < g.n; ++v) remaining += erased[v];

    int it = 0;
    for (; it < max_iters && remaining > 0; ++it) {
        // one synchronous peeling round
        std::fill(resolve.begin(), resolve.end(), 0);
        for (uint32_t c = 0; c < g.m; ++c) {
            const uint32_t* es = g.edges_of_chk(c);
            int cnt = 0;
            uint32_t lone = 0;
            for (int i = 0; i < g.dc && cnt < 2; ++i) {
                uint32_t v = g.edge_var[es[i]];
                if (erased[v]) { ++cnt; lone = v; }
            }
            if (cnt == 1) resolve[lone] = 1;
        }
        size_t peeled = 0;
        for (uint32_t v = 0; v < g.n; ++v)
            if (resolve[v] && erased[v]) { erased[v] = 0; ++peeled; }
        size_t after_peel = remaining - peeled;

        // NR pass: each segment consulted at most once
        size_t fixed_bits = 0;
        for (uint32_t s = 0; s < nseg; ++s) {
            if (attempted[s]) continue;
            uint32_t cnt = 0;
            for (int i = 0; i < l; ++i) cnt += erased[info_pos[s * l + i]];
            if (cnt == 0 || cnt > uint32_t(l_theta)) continue;
            attempted[s] = 1;
            ++res.oracle_calls;
            if (!oracle(s)) continue;
            for (int i = 0; i < l; ++i) {
                uint32_t v = info_pos[s * l + i];
                if (erased[v]) { erased[v] = 0; ++fixed_bits; }
            }
        }
        remaining = after_peel - fixed_bits;
        res.trajectory.emplace_back(double(remaining) / double(g.n),
                                    double(after_peel) / double(g.n));
        if (peeled == 0 && fixed_bits == 0) break;  // stagnation
    }

    res.outcome.word = TritWord(g.n);
    for (uint32_t v = 0; v < g.n; ++v)
        res.outcome.word.set(v, erased[v] ? Trit::erased : trit_of(truth.get(v)));
    res.outcome.iterations_used = it;
    res.outcome.residual_erasures = remaining;
    res.outcome.converged = remaining == 0;
    return res;
}

DecodeOutcome bsc_nr_ldpc(const BitVec& received, const SystematicCode& code,
                          const SoftEstimatorSpec& est_spec, double p, const BitVec& true_info,
                          int max_iters) {
    LlrVector ch = channel_llr(received, p);
    SoftEstimate est = run_estimator(est_spec, true_info);
    std::vector<double> est_llrs = q_to_llr(est);
    LlrVector init = combine_llrs(ch, est_llrs, code.info_positions());
    return bp_decode(code.graph(), init, max_iters);
}

}  // namespace nrlab
