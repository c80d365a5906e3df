#include "doctest.h"

#include <set>
#include <sstream>

#include "nrlab/lzw.hpp"
#include "nrlab/rng.hpp"
#include "support/fixtures.hpp"

using namespace nrlab;

namespace {

std::string printable_ascii() {
    std::string a;
    for (char c = 0x20; c < 0x7f; ++c) a.push_back(c);
    return a;
}

void check_invariants(const LzwDictionary& d) {
    CHECK(d.size() == size_t(1) << d.ell());
    std::set<Bytes> uniq;
    for (const auto& p : d.patterns()) {
        CHECK(!p.empty());
        uniq.insert(p);
    }
    CHECK(uniq.size() == d.size());  // no duplicates
    for (size_t i = 0; i < d.size(); ++i) CHECK(d.index_of(d.pattern(uint32_t(i))) == int64_t(i));
}

}  // namespace

TEST_CASE("run corpus yields singles plus runs") {
    Bytes corpus(20000, 'a');
    LzwDictionary d = build_dictionary(corpus, 8, printable_ascii());
    check_invariants(d);
    CHECK(d.alphabet_size() == 95);
    CHECK(d.index_of("aa") >= 0);
    CHECK(d.index_of("aaa") >= 0);
    // every single printable character is present even if unseen in the corpus
    CHECK(d.index_of("z") >= 0);
    CHECK(d.index_of(" ") >= 0);
}

TEST_CASE("alphabet larger than 2^ell is a capacity error") {
    // 300 distinct symbols cannot fit an 8-bit code; build with bytes 0..255
    // plus ell too small for even that
    Bytes corpus;
    for (int i = 0; i < 256; ++i) corpus.push_back(char(i));
    CHECK_THROWS_AS(build_dictionary(corpus + corpus, 7), std::invalid_argument);
}

TEST_CASE("empty corpus is an input error") {
    CHECK_THROWS_AS(build_dictionary("", 8), std::invalid_argument);
}

TEST_CASE("compress rejects characters outside the alphabet") {
    Bytes corpus(5000, 'a');
    corpus += Bytes(5000, 'b');
    LzwDictionary d = build_dictionary(corpus, 6, "ab");
    CHECK_THROWS_AS(compress("abq", d), std::invalid_argument);
}

TEST_CASE("empty text compresses to an empty stream") {
    Bytes corpus(20000, 'a');
    LzwDictionary d = build_dictionary(corpus, 7, printable_ascii());
    CompressedText c = compress("", d);
    CHECK(c.codeword_count == 0);
    CHECK(c.bits.size() == 0);
    CHECK(decompress(c.bits, d).empty());
}

TEST_CASE("single codeword decodes by table lookup") {
    const auto& fx = testsup::small_text_fixture();
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        uint32_t idx = uint32_t(rng.next_below(fx.dict->size()));
        BitVec bits;
        bits.append_bits(idx, fx.dict->ell());
        CHECK(decompress(bits, *fx.dict) == fx.dict->pattern(idx));
    }
}

TEST_CASE("decompress rejects ragged bit lengths") {
    const auto& fx = testsup::small_text_fixture();
    BitVec bits;
    bits.append_bits(3, fx.dict->ell());
    bits.push_back(true);
    CHECK_THROWS_AS(decompress(bits, *fx.dict), std::invalid_argument);
}

TEST_CASE("round trip on corpus-drawn slices") {
    const auto& fx = testsup::small_text_fixture();
    Rng rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        size_t len = 1 + rng.next_below(4000);
        size_t start = rng.next_below(fx.heldout.size() - len);
        Bytes t = fx.heldout.substr(start, len);
        CompressedText c = compress(t, *fx.dict);
        CHECK(c.bits.size() == c.codeword_count * fx.dict->ell());
        CHECK(decompress(c.bits, *fx.dict) == t);
    }
}

TEST_CASE("identical inputs build bit-identical dictionaries") {
    Bytes corpus = generate_corpus({200000, 33});
    LzwDictionary a = build_dictionary(corpus, 10);
    LzwDictionary b = build_dictionary(corpus, 10);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a.pattern(uint32_t(i)) == b.pattern(uint32_t(i)));
}

TEST_CASE("ell=16 dictionary strictly compresses held-out text") {
    const auto& fx = testsup::small_text_fixture();
    LzwDictionary d16 = build_dictionary(fx.train, 16);
    check_invariants(d16);
    CompressedText c = compress(fx.heldout, d16);
    double bpc = double(c.bits.size()) / double(fx.heldout.size());
    CHECK(bpc <= 8.0);
}

TEST_CASE("dictionary file round trips to the same parse") {
    const auto& fx = testsup::small_text_fixture();
    std::stringstream ss;
    fx.dict->save(ss);
    std::string header;
    std::getline(ss, header);
    CHECK(header.rfind("LZWDICT v1 ell=12 count=4096 alphabet=", 0) == 0);
    ss.seekg(0);
    LzwDictionary back = LzwDictionary::load(ss);
    CHECK(back.ell() == fx.dict->ell());
    for (size_t i = 0; i < back.size(); ++i)
        CHECK(back.pattern(uint32_t(i)) == fx.dict->pattern(uint32_t(i)));
}
