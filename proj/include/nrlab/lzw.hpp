#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "nrlab/bits.hpp"

namespace nrlab {

// Fixed dictionary of exactly 2^ell patterns; immutable once built and safe
// to share across decode trials.
class LzwDictionary {
public:
    LzwDictionary(int ell, std::vector<Bytes> patterns);

    int ell() const { return ell_; }
    size_t size() const { return patterns_.size(); }
    const Bytes& pattern(uint32_t index) const { return patterns_[index]; }
    const std::vector<Bytes>& patterns() const { return patterns_; }

    // index of an exact pattern, or -1
    int64_t index_of(const Bytes& p) const;
    bool in_alphabet(unsigned char c) const { return single_[c] >= 0; }
    size_t alphabet_size() const { return alphabet_size_; }

    // longest dictionary pattern that prefixes text[pos..); length 0 if the
    // leading character is outside the alphabet
    std::pair<uint32_t, size_t> longest_match(const Bytes& text, size_t pos) const;

    size_t max_pattern_length() const { return max_len_; }

    void save(std::ostream& out) const;
    static LzwDictionary load(std::istream& in);

private:
    struct TrieNode {
        int32_t terminal = -1;                       // pattern index, -1 if none
        std::unordered_map<unsigned char, uint32_t> next;
    };
    int ell_;
    std::vector<Bytes> patterns_;
    std::unordered_map<std::string, uint32_t> index_;
    std::vector<TrieNode> trie_;
    int32_t single_[256];
    size_t alphabet_size_ = 0;
    size_t max_len_ = 0;
};

struct CompressedText {
    BitVec bits;
    size_t codeword_count = 0;
    size_t source_length = 0;
};

struct DictBuildOptions {
    int grow_passes = 3;       // re-parse rounds of LZW phrase growth
    int prune_min = 2;         // drop candidates seen fewer times between passes
    int max_pattern_len = 0;   // 0 = unbounded phrase growth
};

// Dictionary construction: all single characters of `alphabet` plus the most
// frequent longer phrases discovered by repeated LZW-style parsing of the
// corpus. Ties break on first occurrence. Deterministic for fixed inputs.
LzwDictionary build_dictionary(const Bytes& corpus, int ell, const std::string& alphabet,
                               const DictBuildOptions& opt = {});

// alphabet = set of bytes observed in the corpus
LzwDictionary build_dictionary(const Bytes& corpus, int ell,
                               const DictBuildOptions& opt = {});

CompressedText compress(const Bytes& text, const LzwDictionary& dict);
Bytes decompress(const BitVec& bits, const LzwDictionary& dict);

void save_dictionary(const LzwDictionary& dict, const std::string& path);
LzwDictionary load_dictionary(const std::string& path);

}  // namespace nrlab
