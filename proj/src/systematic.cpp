#include "nrlab/systematic.hpp"

#include <stdexcept>

namespace nrlab {

namespace {

struct BitMatrix {
    size_t rows, cols, wpr;
    std::vector<uint64_t> data;
    BitMatrix(size_t r, size_t c) : rows(r), cols(c), wpr((c + 63) / 64), data(r * wpr, 0) {}
    bool get(size_t r, size_t c) const { return (data[r * wpr + c / 64] >> (c % 64)) & 1; }
    void flip(size_t r, size_t c) { data[r * wpr + c / 64] ^= 1ull << (c % 64); }
    void xor_rows(size_t dst, size_t src) {
        uint64_t* d = &data[dst * wpr];
        const uint64_t* s = &data[src * wpr];
        for (size_t w = 0; w < wpr; ++w) d[w] ^= s[w];
    }
    void swap_rows(size_t a, size_t b) {
        for (size_t w = 0; w < wpr; ++w) std::swap(data[a * wpr + w], data[b * wpr + w]);
    }
};

}  // namespace

SystematicCode::SystematicCode(const TannerGraph& graph) : graph_(&graph) {
    n_ = graph.n;
    uint32_t m = graph.m;
    // H in virtual column order; perm_ tracks virtual -> physical
    perm_.resize(n_);
    for (uint32_t i = 0; i < n_; ++i) perm_[i] = i;
    BitMatrix h(m, n_);
    for (size_t e = 0; e < graph.edges(); ++e) h.flip(graph.edge_chk[e], graph.edge_var[e]);
    // column content is addressed through perm (virtual col i = physical perm_[i])

    auto get = [&](size_t r, size_t vc) { return h.get(r, perm_[vc]); };

    uint32_t rank = 0;
    for (uint32_t r = 0; r < m; ++r) {
        size_t pivot_col = n_ - 1 - rank;  // parity region grows from the right
        // find a row at or below r with a 1 somewhere in the unpivoted columns
        uint32_t use_row = m;
        size_t use_col = 0;
        for (uint32_t rr = r; rr < m && use_row == m; ++rr)
            for (size_t vc = 0; vc + rank < n_; ++vc)
                if (get(rr, vc)) {
                    use_row = rr;
                    use_col = vc;
                    break;
                }
        if (use_row == m) {
            dropped_ = m - r;  // all remaining rows dependent
            break;
        }
        if (use_row != r) h.swap_rows(r, use_row);
        if (use_col != pivot_col) std::swap(perm_[use_col], perm_[pivot_col]);
        for (uint32_t rr = 0; rr < m; ++rr)
            if (rr != r && h.get(rr, perm_[pivot_col])) h.xor_rows(rr, r);
        ++rank;
    }
    k_ = n_ - rank;
    info_pos_.assign(perm_.begin(), perm_.begin() + k_);

    // store the information part of each pivot row (virtual cols 0..k)
    words_per_row_ = (k_ + 63) / 64;
    parity_rows_.assign(size_t(rank) * words_per_row_, 0);
    for (uint32_t r = 0; r < rank; ++r)
        for (uint32_t c = 0; c < k_; ++c)
            if (h.get(r, perm_[c]))
                parity_rows_[size_t(r) * words_per_row_ + c / 64] |= 1ull << (c % 64);
    // row r has its pivot at virtual column n-1-r, i.e. parity index rank-1-r
}

BitVec SystematicCode::encode(const BitVec& info) const {
    if (info.size() != k_) throw std::invalid_argument("encode: info length != k");
    // pack info little-endian per word for the dot products
    std::vector<uint64_t> iw(words_per_row_, 0);
    for (uint32_t i = 0; i < k_; ++i)
        if (info.get(i)) iw[i / 64] |= 1ull << (i % 64);
    BitVec word(n_);
    for (uint32_t i = 0; i < k_; ++i) word.set(perm_[i], info.get(i));
    uint32_t rank = n_ - k_;
    for (uint32_t r = 0; r < rank; ++r) {
        uint64_t acc = 0;
        const uint64_t* row = &parity_rows_[size_t(r) * words_per_row_];
        for (size_t w = 0; w < words_per_row_; ++w) acc ^= row[w] & iw[w];
        bool bit = __builtin_popcountll(acc) & 1;
        word.set(perm_[size_t(n_) - 1 - r], bit);
    }
    return word;
}

size_t SystematicCode::syndrome_weight(const BitVec& word) const {
    if (word.size() != n_) throw std::invalid_argument("syndrome: length mismatch");
    const TannerGraph& g = *graph_;
    size_t bad = 0;
    for (uint32_t c = 0; c < g.m; ++c) {
        bool s = false;
        const uint32_t* es = g.edges_of_chk(c);
        for (int i = 0; i < g.dc; ++i) s ^= word.get(g.edge_var[es[i]]);
        bad += s;
    }
    return bad;
}

}  // namespace nrlab
