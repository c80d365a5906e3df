#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nrlab/bits.hpp"
#include "nrlab/lexicon.hpp"
#include "nrlab/lzw.hpp"

namespace nrlab {

struct WindowParams {
    int n_min = 2;
    int n_max = 6;
    int t_cap = 20;     // max enumerable erasures per window
    int long_len = 12;  // word/phrase length filter threshold, characters
    int coloc_span = 3; // co-location search distance, windows
    // engineering bounds beyond t_cap: windows whose enumeration or surviving
    // set would exceed these abstain instead of blowing up
    size_t join_budget = size_t(1) << 17;
    size_t survivor_budget = 4096;
    int threads = 0;  // 0 = hardware concurrency

    void validate() const;
};

// Candidate fillings for the erased bits of one window. Assignment bit j is
// the value of erased_pos[j]; erased_pos is sorted ascending.
struct CandidateSet {
    uint32_t start = 0;  // first codeword of the window
    uint32_t k = 0;      // window size in codewords
    std::vector<uint32_t> erased_pos;  // global bit indices
    std::vector<uint32_t> assignments;
    bool capped = false;

    size_t t() const { return erased_pos.size(); }
};

struct NrReport {
    size_t total_bits = 0;
    size_t erasures = 0;
    size_t recovered_correct = 0;  // needs ground truth
    size_t recovered_wrong = 0;
    size_t still_erased = 0;
    std::optional<double> delta_hat;
    std::optional<double> rho_hat;
    std::optional<double> e_nr;       // from measured rates
    std::optional<double> reduction;
};

// window text validity: every whole word strictly inside the decoded text is
// a lexicon word; runs touching either end are boundary fragments and exempt
bool window_text_valid(const Bytes& text, const Lexicon& lex);

CandidateSet enumerate_candidates(const TritWord& noisy, const LzwDictionary& dict,
                                  const Lexicon& lex, uint32_t start, uint32_t k,
                                  const WindowParams& params);

CandidateSet merge_windows(const CandidateSet& s1, const CandidateSet& s2, const TritWord& noisy,
                           const LzwDictionary& dict, const Lexicon& lex,
                           const WindowParams& params);

// keeps only candidates carrying a long valid word/phrase when any does
void length_filter(CandidateSet& s, const TritWord& noisy, const LzwDictionary& dict,
                   const Lexicon& lex, int long_len);

// prunes candidates that take part in no co-location with any candidate of a
// nearby window, once some candidate pair exhibits one
void colocation_filter(std::vector<CandidateSet>& sets, const TritWord& noisy,
                       const LzwDictionary& dict, const Lexicon& lex, int coloc_span);

// full pipeline at one window size: enumerate at n_min, merge up to `level`
// (no length/co-location filters applied)
std::vector<CandidateSet> build_window_sets(const TritWord& noisy, const LzwDictionary& dict,
                                            const Lexicon& lex, const WindowParams& params,
                                            int level);

struct NrDecodeResult {
    TritWord word;
    NrReport report;
};

NrDecodeResult nr_decode(const TritWord& noisy, const LzwDictionary& dict, const Lexicon& lex,
                         const WindowParams& params, const BitVec* truth = nullptr);

}  // namespace nrlab
