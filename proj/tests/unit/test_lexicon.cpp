#include "doctest.h"

#include <cmath>
#include <map>
#include <sstream>

#include "nrlab/lexicon.hpp"
#include "support/fixtures.hpp"

using namespace nrlab;

TEST_CASE("tokenizer lowercases and splits on non-alphanumeric runs") {
    auto t = tokenize("The cat, the CAT;  cat2!");
    REQUIRE(t.size() == 5);
    CHECK(t[0] == "the");
    CHECK(t[1] == "cat");
    CHECK(t[2] == "the");
    CHECK(t[3] == "cat");
    CHECK(t[4] == "cat2");
}

TEST_CASE("exhaustive count oracle on a tiny corpus") {
    // one sentence repeated 8 times; every count is known in closed form
    Bytes corpus;
    for (int i = 0; i < 8; ++i) corpus += "the quick dog can bark loud. ";
    LexiconParams lp;
    lp.min_count = 5;
    lp.pmi_threshold = 0.5;
    lp.context_window = 3;
    Lexicon lex = build_lexicon(corpus, lp);

    for (const char* w : {"the", "quick", "dog", "can", "bark", "loud"})
        CHECK(lex.is_valid_word(w));
    CHECK_FALSE(lex.is_valid_word("cat"));
    CHECK_FALSE(lex.is_valid_word(""));

    // 48 tokens, 47 bigram slots; in-sentence pairs occur 8 times, the
    // wrap-around pair (loud,the) 7 times; unigrams are 8/48 each, so
    // PMI(count c) = log2(36 c / 47) and every adjacent pair is a phrase
    for (const char* ph : {"the quick", "quick dog", "dog can", "can bark", "bark loud",
                           "loud the"})
        CHECK(lex.is_phrase(ph));
    CHECK_FALSE(lex.is_phrase("dog bark"));

    // greedy leftmost merging turns every sentence into the three tokens
    // A="the quick" B="dog can" C="bark loud"; each unordered pair co-occurs
    // 15 times within a window of 3 over the 24-token stream (66 pair slots)
    auto sc = lex.colocation_score("the quick", "bark loud");
    REQUIRE(sc.has_value());
    double expect = std::log2((15.0 / 66.0) / ((8.0 / 24.0) * (8.0 / 24.0)));
    CHECK(*sc == doctest::Approx(expect).epsilon(1e-12));
    CHECK(lex.colocation_score("bark loud", "the quick") == sc);  // unordered symmetry
    CHECK(lex.colocation_score("dog can", "bark loud").has_value());
    // bare words never reach the merged stream here
    CHECK_FALSE(lex.colocation_score("the", "loud").has_value());
    CHECK_FALSE(lex.colocation_score("the quick", "zebra").has_value());
}

TEST_CASE("min_count larger than any frequency flags a degenerate lexicon") {
    Bytes corpus = "alpha beta gamma alpha beta";
    LexiconParams lp;
    lp.min_count = 50;
    Lexicon lex = build_lexicon(corpus, lp);
    CHECK(lex.degenerate);
    CHECK(lex.words.empty());
    CHECK(lex.phrases.empty());
    CHECK(lex.colocations.empty());
}

TEST_CASE("empty corpus is an input error") {
    CHECK_THROWS_AS(build_lexicon(""), std::invalid_argument);
    CHECK_THROWS_AS(build_lexicon(" .,! "), std::invalid_argument);
}

TEST_CASE("stored pairs satisfy the thresholds by recount") {
    const auto& fx = testsup::small_text_fixture();
    LexiconParams lp;  // defaults used to build the fixture lexicon
    for (const auto& [key, cp] : fx.lex->colocations) {
        CHECK(cp.count >= lp.min_count);
        CHECK(cp.score >= lp.pmi_threshold);
        CHECK(cp.token_a <= cp.token_b);
    }
    CHECK(!fx.lex->colocations.empty());
    CHECK(!fx.lex->phrases.empty());
}

TEST_CASE("same corpus and parameters give an identical lexicon") {
    Bytes corpus = generate_corpus({150000, 5});
    Lexicon a = build_lexicon(corpus);
    Lexicon b = build_lexicon(corpus);
    std::stringstream sa, sb;
    a.save(sa);
    b.save(sb);
    CHECK(sa.str() == sb.str());
}

TEST_CASE("lexicon file round trips") {
    const auto& fx = testsup::small_text_fixture();
    std::stringstream ss;
    fx.lex->save(ss);
    Lexicon back = Lexicon::load(ss);
    CHECK(back.words.size() == fx.lex->words.size());
    CHECK(back.phrases.size() == fx.lex->phrases.size());
    CHECK(back.colocations.size() == fx.lex->colocations.size());
    for (const auto& [key, cp] : fx.lex->colocations) {
        auto sc = back.colocation_score(cp.token_a, cp.token_b);
        REQUIRE(sc.has_value());
        CHECK(*sc == doctest::Approx(cp.score).epsilon(1e-9));
    }
}
