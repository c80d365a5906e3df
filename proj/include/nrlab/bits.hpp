#pragma once

#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nrlab {

// Packed bit vector, MSB-first within the logical sequence.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(size_t n, bool value = false)
        : size_(n), words_((n + 63) / 64, value ? ~0ull : 0ull) {
        trim();
    }

    size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool get(size_t i) const {
        return (words_[i >> 6] >> (63 - (i & 63))) & 1ull;
    }
    void set(size_t i, bool v) {
        uint64_t mask = 1ull << (63 - (i & 63));
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }
    void push_back(bool v) {
        if ((size_ & 63) == 0) words_.push_back(0);
        size_++;
        set(size_ - 1, v);
    }

    // append the low `nbits` bits of `value`, most significant first
    void append_bits(uint64_t value, int nbits) {
        for (int b = nbits - 1; b >= 0; --b) push_back((value >> b) & 1ull);
    }
    // read `nbits` bits starting at `pos`, most significant first
    uint64_t read_bits(size_t pos, int nbits) const {
        uint64_t v = 0;
        for (int b = 0; b < nbits; ++b) v = (v << 1) | (get(pos + b) ? 1u : 0u);
        return v;
    }

    bool operator==(const BitVec& o) const {
        return size_ == o.size_ && words_ == o.words_;
    }

private:
    void trim() {
        if (size_ & 63) words_.back() &= ~0ull << (64 - (size_ & 63));
    }
    size_t size_ = 0;
    std::vector<uint64_t> words_;
};

enum class Trit : uint8_t { zero = 0, one = 1, erased = 2 };

inline Trit trit_of(bool b) { return b ? Trit::one : Trit::zero; }

// Fixed-length word over {0, 1, erased}.
class TritWord {
public:
    TritWord() = default;
    explicit TritWord(size_t n, Trit fill = Trit::zero) : sym_(n, fill) {}

    size_t size() const { return sym_.size(); }
    Trit get(size_t i) const { return sym_[i]; }
    void set(size_t i, Trit t) { sym_[i] = t; }
    bool is_erased(size_t i) const { return sym_[i] == Trit::erased; }
    bool bit(size_t i) const { return sym_[i] == Trit::one; }

    size_t count_erased() const {
        size_t c = 0;
        for (Trit t : sym_)
            if (t == Trit::erased) ++c;
        return c;
    }

    static TritWord from_bits(const BitVec& b) {
        TritWord w(b.size());
        for (size_t i = 0; i < b.size(); ++i) w.set(i, trit_of(b.get(i)));
        return w;
    }

    bool operator==(const TritWord& o) const { return sym_ == o.sym_; }

private:
    std::vector<Trit> sym_;
};

using Bytes = std::string;  // raw byte strings throughout

}  // namespace nrlab
