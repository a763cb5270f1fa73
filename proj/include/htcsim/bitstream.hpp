#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "htcsim/fixed_point.hpp"

namespace htcsim {

enum class StreamFormat { TB, RB, GB };

inline const char* to_string(StreamFormat f) {
    switch (f) {
        case StreamFormat::TB: return "TB";
        case StreamFormat::RB: return "RB";
        default: return "GB";
    }
}

// A cycle-indexed bit sequence, word-packed LSB-first (cycle t lives in word
// t/64, bit t%64). Tagged with its wire format and polarity so decode() can
// interpret the popcount.
class Bitstream {
  public:
    Bitstream() = default;
    Bitstream(size_t len, StreamFormat fmt, Polarity pol)
        : words_((len + 63) / 64, 0), len_(len), format_(fmt), polarity_(pol) {}

    size_t size() const { return len_; }
    StreamFormat format() const { return format_; }
    Polarity polarity() const { return polarity_; }
    void set_format(StreamFormat f) { format_ = f; }

    bool bit(size_t t) const { return (words_[t >> 6] >> (t & 63)) & 1u; }

    void set_bit(size_t t, bool v) {
        const uint64_t m = uint64_t{1} << (t & 63);
        if (v) words_[t >> 6] |= m; else words_[t >> 6] &= ~m;
    }

    size_t popcount() const {
        size_t n = 0;
        for (uint64_t w : words_) n += static_cast<size_t>(__builtin_popcountll(w));
        return n;
    }

    // Ones among the first w cycles (the CBSC counting window).
    size_t prefix_popcount(size_t w) const {
        if (w > len_) w = len_;
        size_t n = 0, full = w >> 6;
        for (size_t i = 0; i < full; ++i) n += static_cast<size_t>(__builtin_popcountll(words_[i]));
        const size_t rem = w & 63;
        if (rem) n += static_cast<size_t>(__builtin_popcountll(words_[full] & ((uint64_t{1} << rem) - 1)));
        return n;
    }

    // Signal transitions with the wire idle-low outside the epoch: the level
    // starts at 0 before cycle 0 and returns to 0 after the last cycle, so a
    // stream ending in 1 pays its falling edge.
    long long transitions() const {
        long long n = 0;
        int prev = 0;
        for (size_t t = 0; t < len_; ++t) {
            const int b = bit(t) ? 1 : 0;
            n += (b != prev);
            prev = b;
        }
        n += prev;  // trailing return to idle
        return n;
    }

    const std::vector<uint64_t>& words() const { return words_; }
    std::vector<uint64_t>& words() { return words_; }

    bool operator==(const Bitstream& o) const {
        return len_ == o.len_ && words_ == o.words_;
    }

  private:
    std::vector<uint64_t> words_;
    size_t len_ = 0;
    StreamFormat format_ = StreamFormat::GB;
    Polarity polarity_ = Polarity::Unipolar;
};

}  // namespace htcsim
