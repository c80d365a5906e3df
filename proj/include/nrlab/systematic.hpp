#pragma once

#include <cstdint>
#include <vector>

#include "nrlab/bits.hpp"
#include "nrlab/tanner.hpp"

namespace nrlab {

// Systematic encoder derived from a Tanner graph by GF(2) elimination with
// column swaps. Dependent checks are dropped, so k = n - rank. Intended for
// moderate block lengths (the elimination is dense).
class SystematicCode {
public:
    explicit SystematicCode(const TannerGraph& graph);

    const TannerGraph& graph() const { return *graph_; }
    uint32_t n() const { return n_; }
    uint32_t k() const { return k_; }
    uint32_t rank() const { return n_ - k_; }
    double rate() const { return double(k_) / double(n_); }
    size_t dropped_checks() const { return dropped_; }

    // physical codeword position of virtual position i (first k virtual
    // positions are the systematic information positions)
    uint32_t col_perm(uint32_t i) const { return perm_[i]; }
    const std::vector<uint32_t>& info_positions() const { return info_pos_; }

    BitVec encode(const BitVec& info) const;

    // number of unsatisfied checks of the full graph
    size_t syndrome_weight(const BitVec& word) const;

private:
    const TannerGraph* graph_;
    uint32_t n_, k_;
    size_t dropped_ = 0;
    std::vector<uint32_t> perm_;      // virtual -> physical
    std::vector<uint32_t> info_pos_;  // perm_[0..k)
    size_t words_per_row_ = 0;
    std::vector<uint64_t> parity_rows_;  // rank rows, k bits each (virtual order)
};

}  // namespace nrlab
