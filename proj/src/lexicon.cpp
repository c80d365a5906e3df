#include "nrlab/lexicon.hpp"

#include "nrlab/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace nrlab {

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        unsigned char c = (unsigned char)ch;
        if (std::isalnum(c)) {
            cur.push_back(char(std::tolower(c)));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

uint64_t Lexicon::intern(std::string_view tok) {
    auto it = token_ids_.find(tok);
    if (it != token_ids_.end()) return it->second;
    uint64_t id = token_ids_.size();
    token_ids_.emplace(std::string(tok), id);
    return id;
}

std::optional<uint64_t> Lexicon::id_of(std::string_view tok) const {
    auto it = token_ids_.find(tok);
    if (it == token_ids_.end()) return std::nullopt;
    return it->second;
}

static uint64_t pair_key(uint64_t a, uint64_t b) {
    if (a > b) std::swap(a, b);
    return (a << 32) | b;
}

std::optional<double> Lexicon::colocation_score(std::string_view a, std::string_view b) const {
    auto ia = id_of(a), ib = id_of(b);
    if (!ia || !ib) return std::nullopt;
    auto it = colocations.find(pair_key(*ia, *ib));
    if (it == colocations.end()) return std::nullopt;
    return it->second.score;
}

void Lexicon::add_colocation(ColocationPair cp) {
    if (cp.token_a > cp.token_b) std::swap(cp.token_a, cp.token_b);
    uint64_t ka = intern(cp.token_a), kb = intern(cp.token_b);
    colocations[pair_key(ka, kb)] = std::move(cp);
}

Lexicon build_lexicon(const Bytes& corpus, const LexiconParams& params) {
    if (corpus.empty()) throw std::invalid_argument("lexicon: empty corpus");
    std::vector<std::string> toks = tokenize(corpus);
    if (toks.empty()) throw std::invalid_argument("lexicon: corpus has no tokens");

    Lexicon lex;
    std::unordered_map<std::string, uint64_t, SvHash, SvEq> uni;
    for (const auto& t : toks) uni[t]++;
    double total = double(toks.size());

    for (auto& [w, c] : uni)
        if (c >= params.min_count) {
            lex.words.insert(w);
            lex.max_word_len = std::max(lex.max_word_len, w.size());
        }
    lex.degenerate = lex.words.empty();

    // adjacent-bigram phrases scored by PMI
    std::unordered_map<std::string, uint64_t, SvHash, SvEq> big;
    for (size_t i = 0; i + 1 < toks.size(); ++i) big[toks[i] + " " + toks[i + 1]]++;
    double total2 = double(toks.size() - 1);
    for (auto& [ab, c] : big) {
        if (c < params.min_count) continue;
        size_t sp = ab.find(' ');
        double pa = double(uni[ab.substr(0, sp)]) / total;
        double pb = double(uni[ab.substr(sp + 1)]) / total;
        double pmi = std::log2((double(c) / total2) / (pa * pb));
        if (pmi >= params.pmi_threshold) lex.phrases.insert(ab);
    }

    // co-locations over the phrase-merged token stream: greedy leftmost merge
    std::vector<std::string> merged;
    merged.reserve(toks.size());
    for (size_t i = 0; i < toks.size();) {
        if (i + 1 < toks.size() && lex.is_phrase(toks[i] + " " + toks[i + 1])) {
            merged.push_back(toks[i] + " " + toks[i + 1]);
            i += 2;
        } else {
            merged.push_back(toks[i]);
            i += 1;
        }
    }
    std::unordered_map<std::string, uint64_t, SvHash, SvEq> muni;
    for (const auto& t : merged) muni[t]++;
    double mtotal = double(merged.size());

    // only frequent tokens participate; keeps the pair table small
    auto eligible = [&](const std::string& t) { return muni[t] >= params.min_count; };

    std::unordered_map<uint64_t, uint64_t> pair_counts;
    uint64_t total_pairs = 0;
    int W = params.context_window;
    for (size_t i = 0; i < merged.size(); ++i) {
        for (size_t j = i + 1; j < merged.size() && j <= i + size_t(W); ++j) {
            ++total_pairs;
            if (merged[i] == merged[j]) continue;
            if (!eligible(merged[i]) || !eligible(merged[j])) continue;
            uint64_t ka = lex.intern(merged[i]), kb = lex.intern(merged[j]);
            pair_counts[pair_key(ka, kb)]++;
        }
    }
    std::vector<std::string> by_id(lex.token_ids_.size());
    for (auto& [tok, id] : lex.token_ids_) by_id[id] = tok;
    for (auto& [key, c] : pair_counts) {
        if (c < params.min_count) continue;
        const std::string& a = by_id[key >> 32];
        const std::string& b = by_id[key & 0xffffffffu];
        double pa = double(muni[a]) / mtotal;
        double pb = double(muni[b]) / mtotal;
        double pmi = std::log2((double(c) / double(total_pairs)) / (pa * pb));
        if (pmi < params.pmi_threshold) continue;
        ColocationPair cp;
        cp.token_a = std::min(a, b);
        cp.token_b = std::max(a, b);
        cp.count = c;
        cp.score = pmi;
        lex.colocations.emplace(key, std::move(cp));
    }
    return lex;
}

void Lexicon::save(std::ostream& out) const {
    std::vector<std::string> ws(words.begin(), words.end());
    std::sort(ws.begin(), ws.end());
    out << "#WORDS\n";
    for (const auto& w : ws) out << w << "\n";
    std::vector<std::string> ps(phrases.begin(), phrases.end());
    std::sort(ps.begin(), ps.end());
    out << "#PHRASES\n";
    for (const auto& p : ps) out << p << "\n";
    std::vector<const ColocationPair*> cs;
    cs.reserve(colocations.size());
    for (auto& [k, v] : colocations) cs.push_back(&v);
    std::sort(cs.begin(), cs.end(), [](const ColocationPair* a, const ColocationPair* b) {
        return std::tie(a->token_a, a->token_b) < std::tie(b->token_a, b->token_b);
    });
    out << "#COLOC\n";
    for (auto* c : cs)
        out << c->token_a << "\t" << c->token_b << "\t" << c->count << "\t" << fmt_double(c->score) << "\n";
}

Lexicon Lexicon::load(std::istream& in) {
    Lexicon lex;
    std::string line;
    int section = 0;
    while (std::getline(in, line)) {
        if (line == "#WORDS") { section = 1; continue; }
        if (line == "#PHRASES") { section = 2; continue; }
        if (line == "#COLOC") { section = 3; continue; }
        if (line.empty()) continue;
        if (section == 1) {
            lex.max_word_len = std::max(lex.max_word_len, line.size());
            lex.words.insert(line);
        } else if (section == 2) {
            lex.phrases.insert(line);
        } else if (section == 3) {
            size_t t1 = line.find('\t');
            size_t t2 = line.find('\t', t1 + 1);
            size_t t3 = line.find('\t', t2 + 1);
            if (t1 == std::string::npos || t2 == std::string::npos || t3 == std::string::npos)
                throw std::invalid_argument("lexicon: bad #COLOC line");
            ColocationPair cp;
            cp.token_a = line.substr(0, t1);
            cp.token_b = line.substr(t1 + 1, t2 - t1 - 1);
            cp.count = std::stoull(line.substr(t2 + 1, t3 - t2 - 1));
            cp.score = std::stod(line.substr(t3 + 1));
            lex.add_colocation(std::move(cp));
        } else {
            throw std::invalid_argument("lexicon: content before #WORDS");
        }
    }
    lex.degenerate = lex.words.empty();
    return lex;
}

void save_lexicon(const Lexicon& lex, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    lex.save(f);
}

Lexicon load_lexicon(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    return Lexicon::load(f);
}

}  // namespace nrlab
