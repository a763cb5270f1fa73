#pragma once

#include <cstdint>
#include <vector>

#include "htcsim/bitstream.hpp"
#include "htcsim/fixed_point.hpp"

namespace htcsim {

// --- bit-level generation rules -------------------------------------------

// RB generator rule for 1-indexed cycle t in [1, 2^N]: with k = count of
// trailing zeros of t, emit binary digit (N-1-k) of the code when k < N,
// else 0. Digit X_i therefore lands on the 2^i cycles t with ctz(t) = N-1-i,
// which spreads each digit's ones evenly across the epoch (van-der-Corput
// ordering realised by a plain up-counter, counter value c = t - 1).
inline int rb_bit(uint32_t code, int bits, uint32_t t) {
    const int k = __builtin_ctz(t);
    if (k >= bits) return 0;
    return (code >> (bits - 1 - k)) & 1u;
}

// --- encode / decode --------------------------------------------------------

// TB: code-many ones in a contiguous prefix, then zeros.
Bitstream encode_tb(const FixedPoint& x);

// RB: the deterministic low-discrepancy stream defined by rb_bit above.
// popcount equals the code exactly.
Bitstream encode_rb(const FixedPoint& x);

// popcount-based value: unipolar pc/2^N, bipolar 2*pc/2^N - 1.
double decode(const Bitstream& bs);

// Compact any GB/RB stream into the TB stream of equal popcount (the shift
// register of the TB conversion stage). Decode-preserving and idempotent.
Bitstream gb_to_tb(const Bitstream& bs);

// --- packed per-code stream tables (hot-path support) ----------------------

// All 2^N RB and TB patterns for one width, packed 64 bits per word. Used by
// the MAC kernels and benchmarks to avoid per-sample re-encoding; contents
// are bit-identical to encode_rb / encode_tb (unit-tested equivalence).
struct StreamTables {
    int bits = 0;
    size_t words_per_code = 0;          // ceil(2^N / 64)
    std::vector<uint64_t> rb;           // [code * words_per_code + w]
    std::vector<uint64_t> tb;

    const uint64_t* rb_words(uint32_t code) const { return rb.data() + code * words_per_code; }
    const uint64_t* tb_words(uint32_t code) const { return tb.data() + code * words_per_code; }
};

// Cached, lazily built, thread-safe. bits in [1,16].
const StreamTables& stream_tables(int bits);

}  // namespace htcsim
