#include "nrlab/decoders.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace nrlab {

namespace {

constexpr uint8_t kErased = 2;

uint8_t trit_u8(Trit t) { return uint8_t(t); }

struct EdgeStats {
    size_t err = 0, era = 0;
};

EdgeStats edge_stats(const std::vector<uint8_t>& msgs, const TannerGraph& g, const BitVec* truth) {
    EdgeStats s;
    for (size_t e = 0; e < msgs.size(); ++e) {
        if (msgs[e] == kErased)
            ++s.era;
        else if (truth && bool(msgs[e]) != truth->get(g.edge_var[e]))
            ++s.err;
    }
    return s;
}

}  // namespace

DecodeOutcome peel_decode(const TannerGraph& graph, const TritWord& word, int max_iters,
                          const BitVec* truth) {
    if (word.size() != graph.n) throw std::invalid_argument("peel: word length != n");
    size_t E = graph.edges();
    std::vector<uint8_t> v2c(E), c2v(E);
    for (size_t e = 0; e < E; ++e) v2c[e] = trit_u8(word.get(graph.edge_var[e]));

    DecodeOutcome out;
    out.word = word;
    if (word.count_erased() == 0) {
        out.converged = true;
        return out;
    }
    int it = 0;
    for (; it < max_iters; ++it) {
        // check pass: erased unless all other incoming are known
        for (uint32_t c = 0; c < graph.m; ++c) {
            const uint32_t* es = graph.edges_of_chk(c);
            int erased = 0;
            uint8_t x = 0;
            for (int i = 0; i < graph.dc; ++i) {
                uint8_t t = v2c[es[i]];
                if (t == kErased)
                    ++erased;
                else
                    x ^= t;
            }
            for (int i = 0; i < graph.dc; ++i) {
                uint8_t t = v2c[es[i]];
                int other_erased = erased - (t == kErased);
                c2v[es[i]] = other_erased > 0 ? kErased : uint8_t(x ^ (t == kErased ? 0 : t));
            }
        }
        // variable pass: channel value wins; otherwise any resolved message
        bool changed = false;
        for (uint32_t v = 0; v < graph.n; ++v) {
            const uint32_t* es = graph.edges_of_var(v);
            if (!word.is_erased(v)) continue;  // fixed messages never change
            int known = 0;
            uint8_t val = 0;
            for (int i = 0; i < graph.dv; ++i)
                if (c2v[es[i]] != kErased) {
                    ++known;
                    val = c2v[es[i]];
                }
            for (int i = 0; i < graph.dv; ++i) {
                int known_other = known - (c2v[es[i]] != kErased);
                uint8_t msg = kErased;
                if (known_other > 0) {
                    // take the first resolved among the others
                    for (int j = 0; j < graph.dv; ++j)
                        if (j != i && c2v[es[j]] != kErased) {
                            msg = c2v[es[j]];
                            break;
                        }
                }
                if (v2c[es[i]] != msg) changed = true;
                v2c[es[i]] = msg;
            }
            // node decision from all incoming
            if (known > 0 && out.word.is_erased(v)) out.word.set(v, Trit(val));
        }
        EdgeStats s = edge_stats(v2c, graph, truth);
        if (truth) out.alpha_trace.push_back(double(s.err) / double(E));
        out.beta_trace.push_back(double(s.era) / double(E));
        if (out.word.count_erased() == 0) {
            ++it;
            break;
        }
        if (!changed) {
            ++it;
            break;
        }
    }
    out.iterations_used = it;
    out.residual_erasures = out.word.count_erased();
    out.converged = out.residual_erasures == 0;
    if (truth) {
        for (uint32_t v = 0; v < graph.n; ++v)
            if (!out.word.is_erased(v) && out.word.bit(v) != truth->get(v)) ++out.residual_errors;
    }
    return out;
}

DecodeOutcome generalized_decode(const TannerGraph& graph, const TritWord& word,
                                 const std::vector<uint8_t>& fixed, const GenDecoderConfig& cfg,
                                 const BitVec* truth) {
    if (word.size() != graph.n) throw std::invalid_argument("generalized: word length != n");
    if (fixed.size() != graph.n) throw std::invalid_argument("generalized: mask length != n");
    if (cfg.pi < 1 || cfg.pi > graph.dv - 1)
        throw std::invalid_argument("generalized: pi outside [1, dv-1]");
    if (cfg.tau < 1 || cfg.tau > graph.dv - 1)
        throw std::invalid_argument("generalized: tau outside [1, dv-1]");

    size_t E = graph.edges();
    std::vector<uint8_t> v2c(E), c2v(E);
    for (size_t e = 0; e < E; ++e) v2c[e] = trit_u8(word.get(graph.edge_var[e]));

    auto check_pass = [&]() {
        for (uint32_t c = 0; c < graph.m; ++c) {
            const uint32_t* es = graph.edges_of_chk(c);
            int erased = 0;
            uint8_t x = 0;
            for (int i = 0; i < graph.dc; ++i) {
                uint8_t t = v2c[es[i]];
                if (t == kErased)
                    ++erased;
                else
                    x ^= t;
            }
            for (int i = 0; i < graph.dc; ++i) {
                uint8_t t = v2c[es[i]];
                int other_erased = erased - (t == kErased);
                c2v[es[i]] = other_erased > 0 ? kErased : uint8_t(x ^ (t == kErased ? 0 : t));
            }
        }
    };

    // message from the received value and z/o counts over the other dv-1 edges
    auto vote = [&](uint32_t v, int zeros_other, int ones_other) -> uint8_t {
        uint8_t s = trit_u8(word.get(v));
        if (fixed[v]) return s;
        if (s == kErased) {
            if (zeros_other >= cfg.pi && ones_other == 0) return 0;
            if (ones_other >= cfg.pi && zeros_other == 0) return 1;
            return kErased;
        }
        int opp = s ? zeros_other : ones_other;
        int same = s ? ones_other : zeros_other;
        if (opp >= cfg.tau && same == 0) return uint8_t(1 - s);
        return s;
    };

    DecodeOutcome out;
    int it = 0;
    for (; it < cfg.max_iters; ++it) {
        check_pass();
        bool changed = false;
        for (uint32_t v = 0; v < graph.n; ++v) {
            const uint32_t* es = graph.edges_of_var(v);
            int zeros = 0, ones = 0;
            for (int i = 0; i < graph.dv; ++i) {
                if (c2v[es[i]] == 0) ++zeros;
                else if (c2v[es[i]] == 1) ++ones;
            }
            for (int i = 0; i < graph.dv; ++i) {
                uint8_t inc = c2v[es[i]];
                uint8_t msg = vote(v, zeros - (inc == 0), ones - (inc == 1));
                if (v2c[es[i]] != msg) changed = true;
                v2c[es[i]] = msg;
            }
        }
        EdgeStats s = edge_stats(v2c, graph, truth);
        if (truth) out.alpha_trace.push_back(double(s.err) / double(E));
        out.beta_trace.push_back(double(s.era) / double(E));
        if (!changed) {
            ++it;
            break;
        }
    }
    out.iterations_used = it;

    // final decision per node from all dv incoming messages
    check_pass();
    out.word = word;
    for (uint32_t v = 0; v < graph.n; ++v) {
        if (fixed[v]) continue;
        const uint32_t* es = graph.edges_of_var(v);
        int zeros = 0, ones = 0;
        for (int i = 0; i < graph.dv; ++i) {
            if (c2v[es[i]] == 0) ++zeros;
            else if (c2v[es[i]] == 1) ++ones;
        }
        uint8_t s = trit_u8(word.get(v));
        if (s == kErased) {
            if (zeros >= cfg.pi && ones == 0) out.word.set(v, Trit::zero);
            else if (ones >= cfg.pi && zeros == 0) out.word.set(v, Trit::one);
        } else {
            int opp = s ? zeros : ones;
            int same = s ? ones : zeros;
            if (opp >= cfg.tau && same == 0) out.word.set(v, s ? Trit::zero : Trit::one);
        }
    }
    out.residual_erasures = out.word.count_erased();
    out.converged = out.residual_erasures == 0;
    if (truth) {
        for (uint32_t v = 0; v < graph.n; ++v)
            if (!out.word.is_erased(v) && out.word.bit(v) != truth->get(v)) ++out.residual_errors;
    }
    return out;
}

DecodeOutcome bp_decode(const TannerGraph& graph, const LlrVector& init_llrs, int max_iters,
                        const BitVec* truth) {
    if (init_llrs.values.size() != graph.n) throw std::invalid_argument("bp: llr length != n");
    for (double l : init_llrs.values)
        if (!std::isfinite(l)) throw std::invalid_argument("bp: non-finite LLR");

    size_t E = graph.edges();
    double clamp = init_llrs.clamp;
    std::vector<double> v2c(E), c2v(E, 0.0);
    for (size_t e = 0; e < E; ++e) v2c[e] = init_llrs.values[graph.edge_var[e]];
    std::vector<double> total(graph.n);
    std::vector<double> fwd(graph.dc), bwd(graph.dc);

    auto hard_bit = [&](uint32_t v) { return total[v] < 0.0; };  // positive favours 0

    auto syndrome_ok = [&]() {
        for (uint32_t c = 0; c < graph.m; ++c) {
            const uint32_t* es = graph.edges_of_chk(c);
            bool s = false;
            for (int i = 0; i < graph.dc; ++i) s ^= hard_bit(graph.edge_var[es[i]]);
            if (s) return false;
        }
        return true;
    };

    DecodeOutcome out;
    int it = 0;
    bool ok = false;
    total = init_llrs.values;
    if (syndrome_ok()) {
        ok = true;
        max_iters = 0;  // channel decisions already form a codeword
    }
    for (; it < max_iters; ++it) {
        // check pass via forward/backward tanh partial products
        for (uint32_t c = 0; c < graph.m; ++c) {
            const uint32_t* es = graph.edges_of_chk(c);
            int d = graph.dc;
            fwd[0] = std::tanh(0.5 * v2c[es[0]]);
            for (int i = 1; i < d; ++i) fwd[i] = fwd[i - 1] * std::tanh(0.5 * v2c[es[i]]);
            bwd[d - 1] = std::tanh(0.5 * v2c[es[d - 1]]);
            for (int i = d - 2; i >= 0; --i) bwd[i] = bwd[i + 1] * std::tanh(0.5 * v2c[es[i]]);
            for (int i = 0; i < d; ++i) {
                double prod = 1.0;
                if (i > 0) prod *= fwd[i - 1];
                if (i + 1 < d) prod *= bwd[i + 1];
                prod = std::min(1.0 - 1e-15, std::max(-1.0 + 1e-15, prod));
                c2v[es[i]] = 2.0 * std::atanh(prod);
            }
        }
        // variable pass
        for (uint32_t v = 0; v < graph.n; ++v) {
            const uint32_t* es = graph.edges_of_var(v);
            double sum = init_llrs.values[v];
            for (int i = 0; i < graph.dv; ++i) sum += c2v[es[i]];
            total[v] = sum;
            for (int i = 0; i < graph.dv; ++i) {
                double msg = sum - c2v[es[i]];
                v2c[es[i]] = std::min(clamp, std::max(-clamp, msg));
            }
        }
        if (syndrome_ok()) {
            ok = true;
            ++it;
            break;
        }
    }
    out.iterations_used = it;
    out.converged = ok;
    out.word = TritWord(graph.n);
    for (uint32_t v = 0; v < graph.n; ++v) out.word.set(v, trit_of(hard_bit(v)));
    if (truth) {
        for (uint32_t v = 0; v < graph.n; ++v)
            if (out.word.bit(v) != truth->get(v)) ++out.residual_errors;
    }
    return out;
}

}  // namespace nrlab
