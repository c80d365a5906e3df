#include "nrlab/nr_decoder.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_map>

#include "nrlab/density_evolution.hpp"
#include "nrlab/parallel.hpp"

namespace nrlab {

void WindowParams::validate() const {
    if (n_min < 1 || n_min >= n_max) throw std::invalid_argument("nr: need 1 <= n_min < n_max");
    if (n_max > 16) throw std::invalid_argument("nr: n_max above 16");
    if (t_cap < 1 || t_cap > 25) throw std::invalid_argument("nr: t_cap outside [1,25]");
    if (long_len < 1) throw std::invalid_argument("nr: long_len must be positive");
    if (coloc_span < 0) throw std::invalid_argument("nr: coloc_span negative");
}

namespace {

// Per-window decoding scratch. Codeword indices are rebuilt from the noisy
// bits once; a candidate assignment then only patches the erased bit slots.
struct WindowCtx {
    const TritWord* noisy;
    const LzwDictionary* dict;
    const Lexicon* lex;
    uint32_t start = 0, k = 0;
    std::vector<uint32_t> erased;     // global bit positions, sorted
    std::vector<uint32_t> base_code;  // per codeword, erased bits as 0
    // per erased bit: (codeword slot, shift into the codeword)
    std::vector<std::pair<uint32_t, int>> patch;
    std::string text;

    void init(const TritWord& w, const LzwDictionary& d, const Lexicon& lx, uint32_t start_,
              uint32_t k_) {
        noisy = &w;
        dict = &d;
        lex = &lx;
        start = start_;
        k = k_;
        int ell = d.ell();
        erased.clear();
        base_code.assign(k, 0);
        patch.clear();
        for (uint32_t cw = 0; cw < k; ++cw) {
            size_t bit0 = size_t(start + cw) * ell;
            uint32_t code = 0;
            for (int b = 0; b < ell; ++b) {
                code <<= 1;
                Trit t = w.get(bit0 + b);
                if (t == Trit::erased) {
                    erased.push_back(uint32_t(bit0 + b));
                    patch.emplace_back(cw, ell - 1 - b);
                } else if (t == Trit::one) {
                    code |= 1u;
                }
            }
            base_code[cw] = code;
        }
    }

    // decode the window under `mask` and test word validity
    bool valid(uint32_t mask) {
        text.clear();
        uint32_t codes[16];  // k <= n_max <= 16 in practice
        for (uint32_t cw = 0; cw < k; ++cw) codes[cw] = base_code[cw];
        for (size_t j = 0; j < patch.size(); ++j)
            if ((mask >> j) & 1u) codes[patch[j].first] |= 1u << patch[j].second;
        for (uint32_t cw = 0; cw < k; ++cw) text += dict->pattern(codes[cw]);
        return window_text_valid(text, *lex);
    }

    // tokens (valid words and phrases) fully inside the decoded text
    void collect_tokens(uint32_t mask, std::vector<std::string>& out) {
        valid(mask);  // fills text; validity already guaranteed upstream
        out.clear();
        size_t i = 0, len = text.size();
        std::string tok, prev;
        size_t prev_end = 0;
        while (i < len) {
            if (!std::isalnum((unsigned char)text[i])) {
                ++i;
                continue;
            }
            size_t j = i;
            tok.clear();
            while (j < len && std::isalnum((unsigned char)text[j])) {
                tok.push_back(char(std::tolower((unsigned char)text[j])));
                ++j;
            }
            if (i > 0 && j < len && lex->is_valid_word(tok)) {
                out.push_back(tok);
                if (!prev.empty()) {
                    std::string ph = prev + " " + tok;
                    if (lex->is_phrase(ph)) out.push_back(ph);
                }
                prev = tok;
            } else {
                prev.clear();
            }
            i = j;
        }
    }
};

}  // namespace

bool window_text_valid(const Bytes& text, const Lexicon& lex) {
    size_t i = 0, len = text.size();
    std::string tok;
    while (i < len) {
        if (!std::isalnum((unsigned char)text[i])) {
            ++i;
            continue;
        }
        size_t j = i;
        tok.clear();
        while (j < len && std::isalnum((unsigned char)text[j])) {
            tok.push_back(char(std::tolower((unsigned char)text[j])));
            ++j;
        }
        // runs touching either end of the window may continue outside it
        if (i > 0 && j < len && !lex.is_valid_word(tok)) return false;
        i = j;
    }
    return true;
}

CandidateSet enumerate_candidates(const TritWord& noisy, const LzwDictionary& dict,
                                  const Lexicon& lex, uint32_t start, uint32_t k,
                                  const WindowParams& params) {
    WindowCtx ctx;
    ctx.init(noisy, dict, lex, start, k);
    CandidateSet s;
    s.start = start;
    s.k = k;
    s.erased_pos = ctx.erased;
    size_t t = ctx.erased.size();
    if (t > size_t(params.t_cap) || (size_t(1) << t) > params.join_budget) {
        s.capped = true;
        return s;
    }
    uint32_t lim = uint32_t(1) << t;
    for (uint32_t mask = 0; mask < lim; ++mask)
        if (ctx.valid(mask)) s.assignments.push_back(mask);
    if (s.assignments.size() > params.survivor_budget) {
        s.assignments.clear();
        s.capped = true;
    }
    return s;
}

CandidateSet merge_windows(const CandidateSet& s1, const CandidateSet& s2, const TritWord& noisy,
                           const LzwDictionary& dict, const Lexicon& lex,
                           const WindowParams& params) {
    if (s1.k != s2.k || s2.start != s1.start + 1)
        throw std::invalid_argument("merge: windows are not adjacent same-size sub-windows");
    uint32_t k = s1.k + 1;
    WindowCtx ctx;
    ctx.init(noisy, dict, lex, s1.start, k);
    CandidateSet out;
    out.start = s1.start;
    out.k = k;
    out.erased_pos = ctx.erased;
    size_t t = ctx.erased.size();
    if (t > size_t(params.t_cap) || s1.capped || s2.capped) {
        // fall back to direct enumeration when it is still affordable
        if (t <= size_t(params.t_cap) && (size_t(1) << t) <= params.join_budget)
            return enumerate_candidates(noisy, dict, lex, s1.start, k, params);
        out.capped = true;
        return out;
    }

    // erased positions split into contiguous blocks: F (first codeword only),
    // O (overlap), L (last codeword only)
    int ell = dict.ell();
    uint32_t o_begin = uint32_t(size_t(s1.start + 1) * ell);
    uint32_t o_end = uint32_t(size_t(s1.start + k - 1) * ell);
    size_t nf = 0, no = 0;
    for (uint32_t posn : ctx.erased) {
        if (posn < o_begin) ++nf;
        else if (posn < o_end) ++no;
    }
    uint32_t omask = no >= 32 ? ~0u : ((1u << no) - 1);
    size_t n1 = s1.erased_pos.size();  // = nf + no

    // group s1 assignments by overlap part
    std::unordered_map<uint32_t, std::vector<uint32_t>> by_overlap;
    by_overlap.reserve(s1.assignments.size() * 2);
    for (uint32_t a : s1.assignments) by_overlap[a >> nf].push_back(a);

    size_t tried = 0;
    for (uint32_t b : s2.assignments) {
        auto it = by_overlap.find(b & omask);
        if (it == by_overlap.end()) continue;
        uint32_t high = (b >> no) << n1;
        for (uint32_t a : it->second) {
            if (++tried > params.join_budget) {
                out.assignments.clear();
                out.capped = true;
                return out;
            }
            uint32_t full = a | high;
            if (ctx.valid(full)) out.assignments.push_back(full);
        }
    }
    std::sort(out.assignments.begin(), out.assignments.end());
    if (out.assignments.size() > params.survivor_budget) {
        out.assignments.clear();
        out.capped = true;
    }
    return out;
}

void length_filter(CandidateSet& s, const TritWord& noisy, const LzwDictionary& dict,
                   const Lexicon& lex, int long_len) {
    if (s.capped || s.assignments.size() <= 1) return;
    WindowCtx ctx;
    ctx.init(noisy, dict, lex, s.start, s.k);
    std::vector<std::string> toks;
    std::vector<size_t> maxlen(s.assignments.size(), 0);
    bool any_long = false;
    for (size_t i = 0; i < s.assignments.size(); ++i) {
        ctx.collect_tokens(s.assignments[i], toks);
        for (const auto& t : toks) maxlen[i] = std::max(maxlen[i], t.size());
        if (maxlen[i] >= size_t(long_len)) any_long = true;
    }
    if (!any_long) return;
    std::vector<uint32_t> kept;
    for (size_t i = 0; i < s.assignments.size(); ++i)
        if (maxlen[i] >= size_t(long_len)) kept.push_back(s.assignments[i]);
    s.assignments = std::move(kept);
}

void colocation_filter(std::vector<CandidateSet>& sets, const TritWord& noisy,
                       const LzwDictionary& dict, const Lexicon& lex, int coloc_span) {
    if (lex.colocations.empty() || coloc_span <= 0) return;
    // token lists per candidate, computed once
    std::vector<std::vector<std::vector<std::string>>> toks(sets.size());
    WindowCtx ctx;
    for (size_t w = 0; w < sets.size(); ++w) {
        if (sets[w].capped) continue;
        ctx.init(noisy, dict, lex, sets[w].start, sets[w].k);
        toks[w].resize(sets[w].assignments.size());
        for (size_t i = 0; i < sets[w].assignments.size(); ++i)
            ctx.collect_tokens(sets[w].assignments[i], toks[w][i]);
    }
    auto colocated = [&](const std::vector<std::string>& a, const std::vector<std::string>& b) {
        for (const auto& ta : a)
            for (const auto& tb : b)
                if (ta != tb && lex.colocation_score(ta, tb)) return true;
        return false;
    };
    for (size_t w = 0; w + 1 < sets.size(); ++w) {
        if (sets[w].capped) continue;
        for (size_t u = w + 1; u < sets.size() && sets[u].start - sets[w].start <= uint32_t(coloc_span); ++u) {
            if (sets[u].capped) continue;
            std::vector<uint8_t> keep_w(sets[w].assignments.size(), 0);
            std::vector<uint8_t> keep_u(sets[u].assignments.size(), 0);
            bool any = false;
            for (size_t i = 0; i < sets[w].assignments.size(); ++i)
                for (size_t j = 0; j < sets[u].assignments.size(); ++j)
                    if (colocated(toks[w][i], toks[u][j])) {
                        keep_w[i] = keep_u[j] = 1;
                        any = true;
                    }
            if (!any) continue;
            auto prune = [](CandidateSet& s, std::vector<std::vector<std::string>>& tk,
                            const std::vector<uint8_t>& keep) {
                std::vector<uint32_t> a2;
                std::vector<std::vector<std::string>> t2;
                for (size_t i = 0; i < keep.size(); ++i)
                    if (keep[i]) {
                        a2.push_back(s.assignments[i]);
                        t2.push_back(std::move(tk[i]));
                    }
                s.assignments = std::move(a2);
                tk = std::move(t2);
            };
            prune(sets[w], toks[w], keep_w);
            prune(sets[u], toks[u], keep_u);
        }
    }
}

std::vector<CandidateSet> build_window_sets(const TritWord& noisy, const LzwDictionary& dict,
                                            const Lexicon& lex, const WindowParams& params,
                                            int level) {
    params.validate();
    int ell = dict.ell();
    if (noisy.size() % ell != 0)
        throw std::invalid_argument("nr: bit length not divisible by ell");
    size_t cw_count = noisy.size() / ell;
    if (level < params.n_min || size_t(level) > cw_count) return {};

    size_t base_count = cw_count - params.n_min + 1;
    std::vector<CandidateSet> cur(base_count);
    parallel_for(base_count, params.threads, [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i)
            cur[i] = enumerate_candidates(noisy, dict, lex, uint32_t(i), uint32_t(params.n_min),
                                          params);
    });
    for (int k = params.n_min + 1; k <= level; ++k) {
        size_t count = cw_count - k + 1;
        std::vector<CandidateSet> nxt(count);
        parallel_for(count, params.threads, [&](size_t lo, size_t hi) {
            for (size_t i = lo; i < hi; ++i)
                nxt[i] = merge_windows(cur[i], cur[i + 1], noisy, dict, lex, params);
        });
        cur = std::move(nxt);
    }
    return cur;
}

NrDecodeResult nr_decode(const TritWord& noisy, const LzwDictionary& dict, const Lexicon& lex,
                         const WindowParams& params, const BitVec* truth) {
    params.validate();
    int ell = dict.ell();
    if (noisy.size() % ell != 0)
        throw std::invalid_argument("nr: bit length not divisible by ell");
    size_t cw_count = noisy.size() / ell;

    NrDecodeResult res;
    res.word = noisy;
    res.report.total_bits = noisy.size();
    res.report.erasures = noisy.count_erased();
    if (res.report.erasures == 0 || cw_count < size_t(params.n_max)) {
        res.report.still_erased = res.report.erasures;
        if (res.report.erasures > 0) {
            res.report.delta_hat = 1.0;
            res.report.rho_hat = truth ? std::optional<double>(0.0) : std::nullopt;
        }
        return res;
    }

    std::vector<CandidateSet> sets = build_window_sets(noisy, dict, lex, params, params.n_max);
    parallel_for(sets.size(), params.threads, [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i)
            length_filter(sets[i], noisy, dict, lex, params.long_len);
    });
    colocation_filter(sets, noisy, dict, lex, params.coloc_span);

    // a window recovers a bit when all surviving candidates agree; a bit is
    // decoded only when every recovering window agrees
    size_t nwin = sets.size();
    std::vector<uint32_t> erased_bits;
    for (size_t b = 0; b < noisy.size(); ++b)
        if (noisy.is_erased(b)) erased_bits.push_back(uint32_t(b));

    std::vector<uint8_t> decided(erased_bits.size(), 0);  // 0 none, 1 zero, 2 one, 3 conflict
    parallel_for(erased_bits.size(), params.threads, [&](size_t lo, size_t hi) {
        for (size_t bi = lo; bi < hi; ++bi) {
            uint32_t b = erased_bits[bi];
            size_t cw = b / ell;
            size_t w_lo = cw + 1 >= size_t(params.n_max) ? cw + 1 - params.n_max : 0;
            size_t w_hi = std::min(cw, nwin - 1);
            uint8_t decision = 0;
            for (size_t w = w_lo; w <= w_hi; ++w) {
                const CandidateSet& s = sets[w];
                if (s.capped || s.assignments.empty()) continue;
                auto it = std::lower_bound(s.erased_pos.begin(), s.erased_pos.end(), b);
                size_t j = size_t(it - s.erased_pos.begin());
                uint32_t bitmask = 1u << j;
                uint32_t first = s.assignments[0] & bitmask;
                bool agree = true;
                for (uint32_t a : s.assignments)
                    if ((a & bitmask) != first) {
                        agree = false;
                        break;
                    }
                if (!agree) continue;
                uint8_t val = first ? 2 : 1;
                if (decision == 0)
                    decision = val;
                else if (decision != val)
                    decision = 3;  // recovering windows disagree; leave erased
            }
            decided[bi] = decision;
        }
    });

    size_t ok = 0, bad = 0, still = 0;
    for (size_t bi = 0; bi < erased_bits.size(); ++bi) {
        uint32_t b = erased_bits[bi];
        if (decided[bi] == 1 || decided[bi] == 2) {
            bool v = decided[bi] == 2;
            res.word.set(b, trit_of(v));
            if (truth) (v == truth->get(b) ? ok : bad)++;
        } else {
            ++still;
        }
    }
    res.report.still_erased = still;
    res.report.recovered_correct = ok;
    res.report.recovered_wrong = bad;
    double era = double(res.report.erasures);
    res.report.delta_hat = double(still) / era;
    if (truth) res.report.rho_hat = double(bad) / era;
    if (truth) {
        double eps_hat = era / double(res.report.total_bits);
        double e = noise_entropy(eps_hat, *res.report.delta_hat, *res.report.rho_hat);
        res.report.e_nr = e;
        res.report.reduction = eps_hat > 0 ? (eps_hat - e) / eps_hat : 0.0;
    }
    return res;
}

}  // namespace nrlab
