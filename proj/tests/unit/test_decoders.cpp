#include "doctest.h"

#include <cmath>
#include <map>

#include "nrlab/channel.hpp"
#include "nrlab/decoders.hpp"
#include "nrlab/rng.hpp"
#include "nrlab/soft_pipeline.hpp"
#include "nrlab/tanner.hpp"

using namespace nrlab;

namespace {

TannerGraph parity3() {
    TannerGraph g;
    g.n = 3; g.m = 1; g.dv = 1; g.dc = 3;
    g.edge_var = {0, 1, 2};
    g.edge_chk = {0, 0, 0};
    g.var_edges = {0, 1, 2};
    g.chk_edges = {0, 1, 2};
    return g;
}

// Plain-map reference implementation of the generalized decoder, written
// for clarity instead of speed; used to cross-check the production decoder
// message by message.
struct RefGeneralized {
    static constexpr int kE = 2;  // erased

    static std::map<std::pair<int, int>, int> check_pass(
        const TannerGraph& g, const std::map<std::pair<int, int>, int>& v2c) {
        std::map<std::pair<int, int>, int> c2v;
        for (uint32_t c = 0; c < g.m; ++c)
            for (int i = 0; i < g.dc; ++i) {
                uint32_t v = g.edge_var[g.edges_of_chk(c)[i]];
                int x = 0;
                bool erased = false;
                for (int j = 0; j < g.dc; ++j) {
                    if (j == i) continue;
                    uint32_t w = g.edge_var[g.edges_of_chk(c)[j]];
                    int msg = v2c.at({int(w), int(c)});
                    if (msg == kE) erased = true;
                    else x ^= msg;
                }
                c2v[{int(v), int(c)}] = erased ? kE : x;
            }
        return c2v;
    }

    static int rule(int state, bool is_fixed, int zeros, int ones, int pi, int tau) {
        if (is_fixed) return state;
        if (state == kE) {
            if (zeros >= pi && ones == 0) return 0;
            if (ones >= pi && zeros == 0) return 1;
            return kE;
        }
        int opp = state == 1 ? zeros : ones;
        int same = state == 1 ? ones : zeros;
        if (opp >= tau && same == 0) return 1 - state;
        return state;
    }

    static DecodeOutcome run(const TannerGraph& g, const TritWord& word,
                             const std::vector<uint8_t>& fixed, const GenDecoderConfig& cfg) {
        std::map<std::pair<int, int>, int> v2c;
        for (uint32_t v = 0; v < g.n; ++v)
            for (int i = 0; i < g.dv; ++i)
                v2c[{int(v), int(g.edge_chk[g.edges_of_var(v)[i]])}] = int(word.get(v));
        std::map<std::pair<int, int>, int> c2v;
        for (int it = 0; it < cfg.max_iters; ++it) {
            c2v = check_pass(g, v2c);
            auto next = v2c;
            for (uint32_t v = 0; v < g.n; ++v)
                for (int i = 0; i < g.dv; ++i) {
                    uint32_t c = g.edge_chk[g.edges_of_var(v)[i]];
                    int zeros = 0, ones = 0;
                    for (int j = 0; j < g.dv; ++j) {
                        if (j == i) continue;
                        uint32_t c2 = g.edge_chk[g.edges_of_var(v)[j]];
                        int msg = c2v.at({int(v), int(c2)});
                        if (msg == 0) ++zeros;
                        if (msg == 1) ++ones;
                    }
                    next[{int(v), int(c)}] =
                        rule(int(word.get(v)), fixed[v], zeros, ones, cfg.pi, cfg.tau);
                }
            if (next == v2c) break;
            v2c = next;
        }
        c2v = check_pass(g, v2c);
        DecodeOutcome out;
        out.word = word;
        for (uint32_t v = 0; v < g.n; ++v) {
            int zeros = 0, ones = 0;
            for (int i = 0; i < g.dv; ++i) {
                int msg = c2v.at({int(v), int(g.edge_chk[g.edges_of_var(v)[i]])});
                if (msg == 0) ++zeros;
                if (msg == 1) ++ones;
            }
            int dec = rule(int(word.get(v)), fixed[v], zeros, ones, cfg.pi, cfg.tau);
            out.word.set(v, Trit(dec));
        }
        out.residual_erasures = out.word.count_erased();
        return out;
    }
};

}  // namespace

TEST_CASE("peeling leaves a clean word untouched") {
    TannerGraph g = build_regular_graph(600, 3, 6, 2);
    BitVec zero(600);
    TritWord w = TritWord::from_bits(zero);
    DecodeOutcome o = peel_decode(g, w, 100, &zero);
    CHECK(o.converged);
    CHECK(o.iterations_used == 0);
    CHECK(o.residual_errors == 0);
}

TEST_CASE("single-check code recovers one erasure by XOR") {
    TannerGraph g = parity3();
    TritWord w(3);
    w.set(0, Trit::one);
    w.set(1, Trit::erased);
    w.set(2, Trit::one);
    DecodeOutcome o = peel_decode(g, w, 10);
    CHECK(o.converged);
    CHECK(o.word.bit(1) == false);  // 1 ^ 1
    w.set(2, Trit::zero);
    o = peel_decode(g, w, 10);
    CHECK(o.word.bit(1) == true);
}

TEST_CASE("peeling never invents errors on erasure-only input") {
    TannerGraph g = build_regular_graph(5000, 5, 100, 21);
    BitVec zero(5000);
    Rng rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        TritWord w = transmit(zero, ChannelSpec::bec(0.03), rng.next_u64());
        DecodeOutcome o = peel_decode(g, w, 100, &zero);
        CHECK(o.residual_errors == 0);
    }
}

TEST_CASE("generalized decoder matches the reference trace on random small graphs") {
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        TannerGraph g = build_regular_graph(40, 3, 6, 1000 + trial);
        GenDecoderConfig cfg;
        cfg.pi = 1 + int(rng.next_below(2));
        cfg.tau = 1 + int(rng.next_below(2));
        cfg.max_iters = 30;
        TritWord w(40);
        std::vector<uint8_t> fixed(40, 0);
        for (uint32_t v = 0; v < 40; ++v) {
            double u = rng.next_double();
            if (u < 0.55) {
                fixed[v] = 1;  // correct and fixed (all-zero ground truth)
            } else if (u < 0.8) {
                w.set(v, Trit::erased);
            } else if (u < 0.9) {
                w.set(v, Trit::one);  // error
            }
        }
        DecodeOutcome fast = generalized_decode(g, w, fixed, cfg);
        DecodeOutcome ref = RefGeneralized::run(g, w, fixed, cfg);
        CHECK(fast.word == ref.word);
    }
}

TEST_CASE("clean input stays unchanged for any thresholds") {
    TannerGraph g = build_regular_graph(600, 5, 100, 5);
    BitVec zero(600);
    TritWord w = TritWord::from_bits(zero);
    std::vector<uint8_t> fixed(600, 1);
    for (int pi : {1, 2, 4})
        for (int tau : {1, 2, 4}) {
            DecodeOutcome o = generalized_decode(g, w, fixed, {pi, tau, 50}, &zero);
            CHECK(o.converged);
            CHECK(o.residual_errors == 0);
        }
}

TEST_CASE("a lone error surrounded by unanimous checks is flipped") {
    // all bits correct and fixed except one error at a degree-5 variable;
    // each of its checks sees only correct others, so all five messages
    // disagree with the error and tau=4 flips it
    TannerGraph g = build_regular_graph(20, 5, 10, 77);
    BitVec zero(20);
    TritWord w = TritWord::from_bits(zero);
    std::vector<uint8_t> fixed(20, 1);
    w.set(7, Trit::one);
    fixed[7] = 0;
    DecodeOutcome o = generalized_decode(g, w, fixed, {1, 4, 20}, &zero);
    CHECK(o.residual_errors == 0);
    CHECK(o.converged);
    CHECK_FALSE(o.word.bit(7));
}

TEST_CASE("fixed bits never change") {
    TannerGraph g = build_regular_graph(600, 5, 100, 6);
    BitVec zero(600);
    Rng rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        TritWord w(600);
        std::vector<uint8_t> fixed(600, 0);
        for (uint32_t v = 0; v < 600; ++v) {
            double u = rng.next_double();
            if (u < 0.7) fixed[v] = 1;
            else if (u < 0.9) w.set(v, Trit::erased);
            else w.set(v, Trit::one);
        }
        DecodeOutcome o = generalized_decode(g, w, fixed, {1, 4, 50});
        for (uint32_t v = 0; v < 600; ++v)
            if (fixed[v]) CHECK(o.word.get(v) == w.get(v));
    }
}

TEST_CASE("error-free generalized decoding with pi=1 equals peeling") {
    TannerGraph g = build_regular_graph(2000, 5, 100, 13);
    BitVec zero(2000);
    Rng rng(31);
    for (int trial = 0; trial < 8; ++trial) {
        TritWord w = transmit(zero, ChannelSpec::bec(0.04), rng.next_u64());
        std::vector<uint8_t> fixed(2000);
        for (uint32_t v = 0; v < 2000; ++v) fixed[v] = !w.is_erased(v);
        DecodeOutcome gen = generalized_decode(g, w, fixed, {1, 4, 200});
        DecodeOutcome peel = peel_decode(g, w, 200);
        REQUIRE(gen.word.size() == peel.word.size());
        for (uint32_t v = 0; v < 2000; ++v)
            CHECK(gen.word.is_erased(v) == peel.word.is_erased(v));
    }
}

TEST_CASE("pi and tau are validated") {
    TannerGraph g = build_regular_graph(600, 5, 100, 6);
    TritWord w(600);
    std::vector<uint8_t> fixed(600, 1);
    CHECK_THROWS_AS(generalized_decode(g, w, fixed, {0, 4, 10}), std::invalid_argument);
    CHECK_THROWS_AS(generalized_decode(g, w, fixed, {1, 5, 10}), std::invalid_argument);
}

TEST_CASE("bp decodes a clean strongly biased word in zero iterations") {
    TannerGraph g = build_regular_graph(600, 3, 6, 8);
    LlrVector llrs;
    llrs.values.assign(600, 10.0);
    DecodeOutcome o = bp_decode(g, llrs, 50);
    CHECK(o.converged);
    CHECK(o.iterations_used == 0);
    for (uint32_t v = 0; v < 600; ++v) CHECK_FALSE(o.word.bit(v));
}

TEST_CASE("bp corrects a single strongly wrong LLR") {
    TannerGraph g = build_regular_graph(600, 3, 6, 8);
    LlrVector llrs;
    llrs.values.assign(600, 8.0);
    llrs.values[123] = -8.0;
    BitVec zero(600);
    DecodeOutcome o = bp_decode(g, llrs, 50, &zero);
    CHECK(o.converged);
    CHECK(o.residual_errors == 0);
}

TEST_CASE("bp rejects non-finite inputs") {
    TannerGraph g = build_regular_graph(600, 3, 6, 8);
    LlrVector llrs;
    llrs.values.assign(600, 1.0);
    llrs.values[5] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(bp_decode(g, llrs, 10), std::invalid_argument);
}

TEST_CASE("bp sign symmetry: negating all LLRs complements the decision") {
    // dc even, so the all-ones word is a codeword and the map is symmetric
    TannerGraph g = build_regular_graph(600, 3, 6, 15);
    Rng rng(4);
    LlrVector llrs;
    llrs.values.resize(600);
    for (auto& v : llrs.values) v = (rng.next_double() - 0.5) * 6.0;
    LlrVector neg = llrs;
    for (auto& v : neg.values) v = -v;
    DecodeOutcome a = bp_decode(g, llrs, 30);
    DecodeOutcome b = bp_decode(g, neg, 30);
    for (uint32_t v = 0; v < 600; ++v) CHECK(a.word.bit(v) != b.word.bit(v));
}

TEST_CASE("channel-only bp baseline at low BSC rate: regression bound") {
    TannerGraph g = build_regular_graph(2000, 5, 100, 19);
    BitVec zero(2000);
    int ok = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        TritWord noisy = transmit(zero, ChannelSpec::bsc(0.001), derive_seed(555, 2, t));
        BitVec received(2000);
        for (uint32_t v = 0; v < 2000; ++v) received.set(v, noisy.bit(v));
        LlrVector llrs = channel_llr(received, 0.001);
        DecodeOutcome o = bp_decode(g, llrs, 60, &zero);
        ok += (o.converged && o.residual_errors == 0);
    }
    CHECK(ok >= 990);  // recorded baseline: >= 99% frame success
}
