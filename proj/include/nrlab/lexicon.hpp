#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "nrlab/bits.hpp"

namespace nrlab {

struct ColocationPair {
    std::string token_a;  // canonical: token_a <= token_b
    std::string token_b;
    uint64_t count = 0;
    double score = 0.0;  // pointwise mutual information, log2
};

struct LexiconParams {
    uint64_t min_count = 5;
    double pmi_threshold = 3.0;
    int context_window = 20;  // words
};

// transparent hashing so lookups work on string_view without allocating
struct SvHash {
    using is_transparent = void;
    size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
};
struct SvEq {
    using is_transparent = void;
    bool operator()(std::string_view a, std::string_view b) const { return a == b; }
};
using StringSet = std::unordered_set<std::string, SvHash, SvEq>;

class Lexicon {
public:
    StringSet words;
    StringSet phrases;  // two-word strings, "a b"
    std::unordered_map<uint64_t, ColocationPair> colocations;  // keyed by token id pair
    size_t max_word_len = 0;
    bool degenerate = false;  // set when thresholds left the word set empty

    bool is_valid_word(std::string_view token) const {
        return !token.empty() && words.find(token) != words.end();
    }
    bool is_phrase(std::string_view p) const { return phrases.find(p) != phrases.end(); }

    std::optional<double> colocation_score(std::string_view a, std::string_view b) const;
    void add_colocation(ColocationPair cp);

    void save(std::ostream& out) const;
    static Lexicon load(std::istream& in);

private:
    friend Lexicon build_lexicon(const Bytes&, const LexiconParams&);
    uint64_t intern(std::string_view tok);  // id for colocation keys
    std::optional<uint64_t> id_of(std::string_view tok) const;
    std::unordered_map<std::string, uint64_t, SvHash, SvEq> token_ids_;
};

// lowercase, split on non-alphanumeric runs
std::vector<std::string> tokenize(std::string_view text);

Lexicon build_lexicon(const Bytes& corpus, const LexiconParams& params = {});

void save_lexicon(const Lexicon& lex, const std::string& path);
Lexicon load_lexicon(const std::string& path);

}  // namespace nrlab
