#include "nrlab/lzw.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nrlab {

LzwDictionary::LzwDictionary(int ell, std::vector<Bytes> patterns)
    : ell_(ell), patterns_(std::move(patterns)) {
    if (ell < 1 || ell > 30) throw std::invalid_argument("lzw: ell out of range");
    if (patterns_.size() != (size_t(1) << ell))
        throw std::invalid_argument("lzw: dictionary must hold exactly 2^ell patterns");
    for (auto& s : single_) s = -1;
    index_.reserve(patterns_.size() * 2);
    trie_.emplace_back();
    for (uint32_t i = 0; i < patterns_.size(); ++i) {
        const Bytes& p = patterns_[i];
        if (p.empty()) throw std::invalid_argument("lzw: empty pattern");
        if (!index_.emplace(p, i).second)
            throw std::invalid_argument("lzw: duplicate pattern");
        if (p.size() == 1) {
            if (single_[(unsigned char)p[0]] < 0) ++alphabet_size_;
            single_[(unsigned char)p[0]] = int32_t(i);
        }
        max_len_ = std::max(max_len_, p.size());
        uint32_t node = 0;
        for (unsigned char c : p) {
            auto it = trie_[node].next.find(c);
            if (it == trie_[node].next.end()) {
                trie_.emplace_back();
                it = trie_[node].next.emplace(c, uint32_t(trie_.size() - 1)).first;
            }
            node = it->second;
        }
        trie_[node].terminal = int32_t(i);
    }
}

int64_t LzwDictionary::index_of(const Bytes& p) const {
    auto it = index_.find(p);
    return it == index_.end() ? -1 : int64_t(it->second);
}

std::pair<uint32_t, size_t> LzwDictionary::longest_match(const Bytes& text, size_t pos) const {
    uint32_t node = 0;
    int32_t best = -1;
    size_t best_len = 0, depth = 0;
    while (pos + depth < text.size()) {
        auto it = trie_[node].next.find((unsigned char)text[pos + depth]);
        if (it == trie_[node].next.end()) break;
        node = it->second;
        ++depth;
        if (trie_[node].terminal >= 0) {
            best = trie_[node].terminal;
            best_len = depth;
        }
    }
    if (best < 0) return {0, 0};
    return {uint32_t(best), best_len};
}

namespace {

// Growing phrase store used during construction. Nodes form a trie keyed by
// (parent, byte); each node remembers usage count and discovery order.
struct Grower {
    struct Node {
        int32_t pattern_len;
        uint64_t count = 0;
        uint64_t first_seen;
    };
    std::unordered_map<uint64_t, uint32_t> edges;  // (node<<8|byte) -> node
    std::vector<Node> nodes;
    std::vector<uint32_t> parent;
    std::vector<unsigned char> byte_of;
    uint64_t tick = 0;

    uint32_t root() const { return 0; }

    Grower() {
        nodes.push_back({0, 0, 0});
        parent.push_back(0);
        byte_of.push_back(0);
    }

    int64_t child(uint32_t node, unsigned char c) const {
        auto it = edges.find((uint64_t(node) << 8) | c);
        return it == edges.end() ? -1 : int64_t(it->second);
    }

    uint32_t add_child(uint32_t node, unsigned char c) {
        uint32_t id = uint32_t(nodes.size());
        nodes.push_back({nodes[node].pattern_len + 1, 0, ++tick});
        parent.push_back(node);
        byte_of.push_back(c);
        edges.emplace((uint64_t(node) << 8) | c, id);
        return id;
    }

    Bytes pattern_of(uint32_t node) const {
        Bytes s(nodes[node].pattern_len, '\0');
        for (size_t i = s.size(); i-- > 0;) {
            s[i] = char(byte_of[node]);
            node = parent[node];
        }
        return s;
    }
};

}  // namespace

LzwDictionary build_dictionary(const Bytes& corpus, int ell, const std::string& alphabet,
                               const DictBuildOptions& opt) {
    if (corpus.empty()) throw std::invalid_argument("lzw: empty corpus");
    bool in_alpha[256] = {};
    size_t alpha_count = 0;
    for (unsigned char c : alphabet)
        if (!in_alpha[c]) {
            in_alpha[c] = true;
            ++alpha_count;
        }
    if (alpha_count == 0) throw std::invalid_argument("lzw: empty alphabet");
    if ((size_t(1) << ell) < alpha_count)
        throw std::invalid_argument("lzw: 2^ell smaller than alphabet");
    for (unsigned char c : corpus)
        if (!in_alpha[c]) throw std::invalid_argument("lzw: corpus character outside alphabet");

    Grower g;
    uint32_t singles[256];
    for (int c = 0; c < 256; ++c)
        if (in_alpha[c]) singles[c] = g.add_child(g.root(), (unsigned char)c);

    for (int pass = 0; pass < opt.grow_passes; ++pass) {
        for (auto& n : g.nodes) n.count = 0;
        size_t pos = 0;
        while (pos < corpus.size()) {
            // greedy longest match against current phrase store
            uint32_t node = g.root();
            uint32_t matched = singles[(unsigned char)corpus[pos]];
            size_t len = 0;
            while (pos + len < corpus.size()) {
                int64_t nxt = g.child(node, (unsigned char)corpus[pos + len]);
                if (nxt < 0) break;
                node = uint32_t(nxt);
                ++len;
                matched = node;
            }
            g.nodes[matched].count++;
            // grow: matched phrase extended by the next character
            if (pos + len < corpus.size() &&
                (opt.max_pattern_len <= 0 ||
                 g.nodes[matched].pattern_len < opt.max_pattern_len)) {
                int64_t ext = g.child(matched, (unsigned char)corpus[pos + len]);
                if (ext < 0) g.add_child(matched, (unsigned char)corpus[pos + len]);
            }
            pos += len;
        }
        if (pass + 1 == opt.grow_passes) break;
        // prune rare leaves so the store stays bounded between passes;
        // singles and interior nodes are kept (interior nodes carry prefixes)
        std::vector<bool> has_child(g.nodes.size(), false);
        for (auto& [key, id] : g.edges) has_child[key >> 8] = true;
        std::vector<bool> keep(g.nodes.size(), true);
        for (uint32_t id = 1; id < g.nodes.size(); ++id)
            if (g.nodes[id].pattern_len > 1 && !has_child[id] &&
                g.nodes[id].count < uint64_t(opt.prune_min))
                keep[id] = false;
        Grower pruned;
        std::vector<uint32_t> remap(g.nodes.size(), 0);
        for (int c = 0; c < 256; ++c)
            if (in_alpha[c]) remap[singles[c]] = pruned.add_child(pruned.root(), (unsigned char)c);
        // nodes were created parent-first, so one forward sweep remaps all
        for (uint32_t id = 1; id < g.nodes.size(); ++id) {
            if (g.nodes[id].pattern_len == 1) {
                pruned.nodes[remap[id]].count = g.nodes[id].count;
                pruned.nodes[remap[id]].first_seen = g.nodes[id].first_seen;
                continue;
            }
            if (!keep[id] || !keep[g.parent[id]]) {
                keep[id] = false;
                continue;
            }
            uint32_t nid = pruned.add_child(remap[g.parent[id]], g.byte_of[id]);
            pruned.nodes[nid].count = g.nodes[id].count;
            pruned.nodes[nid].first_seen = g.nodes[id].first_seen;
            remap[id] = nid;
        }
        pruned.tick = g.tick;
        g = std::move(pruned);
        for (int c = 0; c < 256; ++c)
            if (in_alpha[c]) singles[c] = uint32_t(g.child(g.root(), (unsigned char)c));
    }

    // select: all singles plus the top multi-byte phrases by (count, first seen)
    struct Cand {
        uint64_t count;
        uint64_t first_seen;
        uint32_t node;
    };
    std::vector<Cand> cands;
    for (uint32_t id = 1; id < g.nodes.size(); ++id)
        if (g.nodes[id].pattern_len > 1 && g.nodes[id].count > 0)
            cands.push_back({g.nodes[id].count, g.nodes[id].first_seen, id});
    size_t want = (size_t(1) << ell) - alpha_count;
    if (cands.size() < want)
        throw std::invalid_argument("lzw: corpus too small to fill a 2^" +
                                    std::to_string(ell) + " dictionary");
    std::partial_sort(cands.begin(), cands.begin() + want, cands.end(),
                      [](const Cand& a, const Cand& b) {
                          if (a.count != b.count) return a.count > b.count;
                          return a.first_seen < b.first_seen;
                      });
    cands.resize(want);

    std::vector<Bytes> patterns;
    patterns.reserve(size_t(1) << ell);
    for (int c = 0; c < 256; ++c)
        if (in_alpha[c]) patterns.push_back(Bytes(1, char(c)));
    for (const Cand& c : cands) patterns.push_back(g.pattern_of(c.node));
    return LzwDictionary(ell, std::move(patterns));
}

LzwDictionary build_dictionary(const Bytes& corpus, int ell, const DictBuildOptions& opt) {
    if (corpus.empty()) throw std::invalid_argument("lzw: empty corpus");
    bool seen[256] = {};
    std::string alphabet;
    for (unsigned char c : corpus)
        if (!seen[c]) {
            seen[c] = true;
            alphabet.push_back(char(c));
        }
    return build_dictionary(corpus, ell, alphabet, opt);
}

CompressedText compress(const Bytes& text, const LzwDictionary& dict) {
    CompressedText out;
    out.source_length = text.size();
    size_t pos = 0;
    while (pos < text.size()) {
        auto [idx, len] = dict.longest_match(text, pos);
        if (len == 0)
            throw std::invalid_argument("lzw: character outside dictionary alphabet");
        out.bits.append_bits(idx, dict.ell());
        out.codeword_count++;
        pos += len;
    }
    return out;
}

Bytes decompress(const BitVec& bits, const LzwDictionary& dict) {
    if (bits.size() % dict.ell() != 0)
        throw std::invalid_argument("lzw: bit length not divisible by ell");
    Bytes out;
    for (size_t pos = 0; pos < bits.size(); pos += dict.ell())
        out += dict.pattern(uint32_t(bits.read_bits(pos, dict.ell())));
    return out;
}

static std::string hex_encode(const Bytes& s) {
    static const char* d = "0123456789abcdef";
    std::string out;
    out.reserve(s.size() * 2);
    for (unsigned char c : s) {
        out.push_back(d[c >> 4]);
        out.push_back(d[c & 15]);
    }
    return out;
}

static Bytes hex_decode(const std::string& s) {
    auto val = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        throw std::invalid_argument("lzw: bad hex in dictionary file");
    };
    if (s.size() % 2) throw std::invalid_argument("lzw: odd hex length");
    Bytes out;
    out.reserve(s.size() / 2);
    for (size_t i = 0; i < s.size(); i += 2)
        out.push_back(char(val(s[i]) * 16 + val(s[i + 1])));
    return out;
}

void LzwDictionary::save(std::ostream& out) const {
    out << "LZWDICT v1 ell=" << ell_ << " count=" << patterns_.size()
        << " alphabet=" << alphabet_size_ << "\n";
    for (size_t i = 0; i < patterns_.size(); ++i)
        out << i << "\t" << hex_encode(patterns_[i]) << "\n";
}

LzwDictionary LzwDictionary::load(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("lzw: empty dictionary file");
    int ell = 0;
    size_t count = 0, alpha = 0;
    if (sscanf(line.c_str(), "LZWDICT v1 ell=%d count=%zu alphabet=%zu", &ell, &count,
               &alpha) != 3)
        throw std::invalid_argument("lzw: bad dictionary header");
    std::vector<Bytes> patterns(count);
    std::vector<bool> seen(count, false);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos) throw std::invalid_argument("lzw: bad dictionary line");
        size_t idx = std::stoull(line.substr(0, tab));
        if (idx >= count || seen[idx]) throw std::invalid_argument("lzw: bad dictionary index");
        patterns[idx] = hex_decode(line.substr(tab + 1));
        seen[idx] = true;
    }
    for (bool s : seen)
        if (!s) throw std::invalid_argument("lzw: missing dictionary entries");
    return LzwDictionary(ell, std::move(patterns));
}

void save_dictionary(const LzwDictionary& dict, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    dict.save(f);
}

LzwDictionary load_dictionary(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    return LzwDictionary::load(f);
}

}  // namespace nrlab
