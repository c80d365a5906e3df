#include "nrlab/channel.hpp"

#include "nrlab/rng.hpp"

namespace nrlab {

TritWord transmit(const BitVec& word, const ChannelSpec& ch, uint64_t seed) {
    Rng rng(mix64(seed ^ 0xc4a11b1eull));
    TritWord out(word.size());
    if (ch.kind == ChannelSpec::Kind::bec) {
        for (size_t i = 0; i < word.size(); ++i)
            out.set(i, rng.next_bool(ch.rate) ? Trit::erased : trit_of(word.get(i)));
    } else {
        for (size_t i = 0; i < word.size(); ++i)
            out.set(i, trit_of(word.get(i) ^ rng.next_bool(ch.rate)));
    }
    return out;
}

}  // namespace nrlab
