#pragma once

#include <memory>
#include <string>

#include "nrlab/corpus.hpp"
#include "nrlab/lexicon.hpp"
#include "nrlab/lzw.hpp"

namespace testsup {

// Small text fixture shared across unit tests: training corpus, a held-out
// text from the same generator, an ell=12 dictionary and a lexicon.
struct TextFixture {
    nrlab::Bytes train;
    nrlab::Bytes heldout;
    std::unique_ptr<nrlab::LzwDictionary> dict;
    std::unique_ptr<nrlab::Lexicon> lex;
};

inline const TextFixture& small_text_fixture() {
    static TextFixture* fx = [] {
        auto* f = new TextFixture;
        nrlab::CorpusParams train_p;
        train_p.target_chars = 1200 * 1000;
        train_p.seed = 11;
        f->train = nrlab::generate_corpus(train_p);
        nrlab::CorpusParams held_p;
        held_p.target_chars = 220 * 1000;
        held_p.seed = 12;
        f->heldout = nrlab::generate_corpus(held_p);
        nrlab::DictBuildOptions opt;
        opt.max_pattern_len = 8;
        f->dict = std::make_unique<nrlab::LzwDictionary>(
            nrlab::build_dictionary(f->train, 12, opt));
        f->lex = std::make_unique<nrlab::Lexicon>(nrlab::build_lexicon(f->train));
        return f;
    }();
    return *fx;
}

}  // namespace testsup
