#include "doctest.h"

#include <cmath>

#include "nrlab/channel.hpp"
#include "nrlab/rng.hpp"
#include "nrlab/soft_pipeline.hpp"

using namespace nrlab;

namespace {

struct CodeFixture {
    TannerGraph graph;
    SystematicCode code;
    CodeFixture() : graph(build_regular_graph(2000, 5, 100, 51)), code(graph) {}
};

const CodeFixture& fixture() {
    static CodeFixture fx;
    return fx;
}

}  // namespace

TEST_CASE("q_to_llr evaluates the log ratio with clamping") {
    SoftEstimate est;
    est.q = {0.5, 0.1, 0.0, 1.0};
    auto llrs = q_to_llr(est, 1e-6);
    CHECK(llrs[0] == doctest::Approx(0.0));
    CHECK(llrs[1] == doctest::Approx(std::log(9.0)).epsilon(1e-12));
    CHECK(llrs[2] == doctest::Approx(std::log((1.0 - 1e-6) / 1e-6)).epsilon(1e-9));
    CHECK(llrs[3] == doctest::Approx(-std::log((1.0 - 1e-6) / 1e-6)).epsilon(1e-9));
    CHECK(std::isfinite(llrs[2]));
    CHECK_THROWS_AS(q_to_llr(est, 0.7), std::invalid_argument);
}

TEST_CASE("channel LLR signs and magnitude") {
    BitVec w(2);
    w.set(1, true);
    LlrVector llrs = channel_llr(w, 0.01);
    CHECK(llrs.values[0] == doctest::Approx(std::log(99.0)).epsilon(1e-12));
    CHECK(llrs.values[1] == doctest::Approx(-std::log(99.0)).epsilon(1e-12));
    LlrVector weak = channel_llr(w, 0.499);
    CHECK(std::abs(weak.values[0]) < 0.01);
    CHECK_THROWS_AS(channel_llr(w, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(channel_llr(w, 0.5), std::invalid_argument);
}

TEST_CASE("combine adds on information positions and passes parity through") {
    LlrVector ch;
    ch.values = {2.0, -1.0, 0.5, 3.0};
    std::vector<uint32_t> info_pos = {0, 2};
    LlrVector out = combine_llrs(ch, {-5.0, 1.0}, info_pos);
    CHECK(out.values[0] == doctest::Approx(-3.0));  // soft override
    CHECK(out.values[1] == doctest::Approx(-1.0));
    CHECK(out.values[2] == doctest::Approx(1.5));
    CHECK(out.values[3] == doctest::Approx(3.0));
    CHECK_THROWS_AS(combine_llrs(ch, {1.0}, info_pos), std::invalid_argument);
}

TEST_CASE("combine is additive over random vectors and clamps") {
    Rng rng(8);
    LlrVector ch;
    ch.clamp = 30.0;
    ch.values.resize(64);
    std::vector<uint32_t> info_pos;
    for (uint32_t i = 0; i < 32; ++i) info_pos.push_back(i * 2);
    std::vector<double> est(32);
    for (auto& v : ch.values) v = (rng.next_double() - 0.5) * 80.0;
    for (auto& v : est) v = (rng.next_double() - 0.5) * 80.0;
    LlrVector out = combine_llrs(ch, est, info_pos);
    for (size_t i = 0; i < 64; ++i) {
        double expect = ch.values[i];
        if (i % 2 == 0) expect += est[i / 2];
        expect = std::min(30.0, std::max(-30.0, expect));
        CHECK(out.values[i] == doctest::Approx(expect).epsilon(1e-12));
        CHECK(std::abs(out.values[i]) <= 30.0);
    }
}

TEST_CASE("uninformative estimator reproduces channel-only BP bit for bit") {
    const auto& fx = fixture();
    for (uint64_t trial = 0; trial < 20; ++trial) {
        Rng rng(derive_seed(777, stream::info, trial));
        BitVec info(fx.code.k());
        for (uint32_t i = 0; i < fx.code.k(); ++i) info.set(i, rng.next_bool(0.5));
        BitVec cw = fx.code.encode(info);
        TritWord noisy = transmit(cw, ChannelSpec::bsc(0.006),
                                  derive_seed(777, stream::channel, trial));
        BitVec received(fx.code.n());
        for (uint32_t v = 0; v < fx.code.n(); ++v) received.set(v, noisy.bit(v));

        DecodeOutcome base = bp_decode(fx.graph, channel_llr(received, 0.006), 60);
        DecodeOutcome nr = bsc_nr_ldpc(received, fx.code, SoftEstimatorSpec::uninformative(),
                                       0.006, info, 60);
        CHECK(nr.word == base.word);
        CHECK(nr.iterations_used == base.iterations_used);
    }
}

TEST_CASE("oracle with accuracy one half equals uninformative") {
    const auto& fx = fixture();
    Rng rng(3);
    BitVec info(fx.code.k());
    for (uint32_t i = 0; i < fx.code.k(); ++i) info.set(i, rng.next_bool(0.5));
    SoftEstimate a = run_estimator(SoftEstimatorSpec::oracle(0.5), info);
    SoftEstimate b = run_estimator(SoftEstimatorSpec::uninformative(), info);
    CHECK(a.q == b.q);
    CHECK_THROWS_AS(SoftEstimatorSpec::oracle(0.3), std::invalid_argument);
}

TEST_CASE("sequential scheme falls back to pure LDPC with an empty lexicon") {
    // degenerate text decoder: nothing validates, so no candidate filtering;
    // all fillings survive, no window is unanimous, nothing gets recovered
    const auto& fx = fixture();
    LzwDictionary dict(2, {" ", "cat", "dog", "qqq"});
    Lexicon lex;
    lex.words.insert("unrelated");
    WindowParams wp;
    GenDecoderConfig gcfg{1, 4, 100};
    BitVec zero(fx.code.n());
    TritWord noisy = transmit(zero, ChannelSpec::bec(0.02), 12345);
    SequentialResult r = sequential_nr_ldpc(noisy, fx.code, dict, lex, wp, gcfg, &zero);
    CHECK(r.outcome.converged);  // 0.02 is far below the code's own threshold
    CHECK(r.outcome.residual_errors == 0);
}

TEST_CASE("iterative scheme with a failing oracle equals plain peeling") {
    const auto& fx = fixture();
    BitVec zero(fx.code.n());
    // l must divide k; build a small aligned code
    TannerGraph g = build_regular_graph(2000, 5, 100, 21);
    SystematicCode code(g);
    int l = 10;
    while (code.k() % l != 0) ++l;
    TritWord noisy = transmit(zero, ChannelSpec::bec(0.03), 99);
    size_t calls = 0;
    IterativeResult it = iterative_nr_ldpc(noisy, code, zero, [&](uint32_t) {
        ++calls;
        return false;
    }, l, 3, 100);
    DecodeOutcome peel = peel_decode(g, noisy, 100);
    CHECK(it.outcome.residual_erasures == peel.residual_erasures);
    CHECK(calls == it.oracle_calls);
}

TEST_CASE("iterative scheme consults each segment at most once") {
    TannerGraph g = build_regular_graph(2000, 5, 100, 22);
    SystematicCode code(g);
    int l = 10;
    while (code.k() % l != 0) ++l;
    BitVec zero(2000);
    TritWord noisy = transmit(zero, ChannelSpec::bec(0.06), 7);
    std::vector<int> counts(code.k() / l, 0);
    Rng rng(5);
    IterativeResult it = iterative_nr_ldpc(noisy, code, zero, [&](uint32_t s) {
        counts[s]++;
        return rng.next_bool(0.5);
    }, l, 4, 100);
    for (int c : counts) CHECK(c <= 1);
}

TEST_CASE("iterative scheme with a perfect oracle and full budget clears info instantly") {
    TannerGraph g = build_regular_graph(2000, 5, 100, 23);
    SystematicCode code(g);
    int l = 10;
    while (code.k() % l != 0) ++l;
    BitVec zero(2000);
    TritWord noisy = transmit(zero, ChannelSpec::bec(0.3), 11);
    IterativeResult it = iterative_nr_ldpc(noisy, code, zero, [](uint32_t) { return true; }, l,
                                           l, 200);
    // all info segments cleared on the first NR pass; parity then peels off
    REQUIRE(!it.trajectory.empty());
    double info_frac = double(code.k()) / double(code.n());
    CHECK(it.trajectory[0].first <= 1.0 - info_frac);
    CHECK(it.outcome.converged);
}
