#pragma once

#include <cstdint>
#include <vector>

#include "htcsim/fixed_point.hpp"

namespace htcsim {

// PWM-style unary stream of arbitrary length: the value is popcount/length.
// Operand streams keep their ones in a contiguous prefix (duty cycle);
// product and OR-sum streams are general bit patterns.
struct UnaryStream {
    std::vector<uint64_t> words;
    size_t len = 0;

    static UnaryStream prefix(size_t len, size_t ones);

    bool bit(size_t t) const { return (words[t >> 6] >> (t & 63)) & 1u; }
    void set_bit(size_t t) { words[t >> 6] |= uint64_t{1} << (t & 63); }
    size_t popcount() const;
    double value() const { return static_cast<double>(popcount()) / static_cast<double>(len); }
};

// Counting multiplier: the down counter opens a w.code-cycle window over the
// RB stream of x; the product numerator is the ones that pass. Returns the
// product as code numerator/2^N (exactly the HTC AND-gate popcount).
FixedPoint cbsc_multiply(const FixedPoint& w, const FixedPoint& x);

// M counting products summed exactly in binary (2's complement). Bipolar
// operands run sign-magnitude around the unipolar counting core: the signed
// magnitudes |2n - 2^N| (the full-scale magnitude 2^N acts as an all-ones
// stream) are counted and the binary signs multiplied.
// cbsc_mac_num returns the signed numerator over 2^N; cbsc_mac its value.
long long cbsc_mac_num(const std::vector<FixedPoint>& b, const std::vector<FixedPoint>& c,
                       Polarity polarity);
double cbsc_mac(const std::vector<FixedPoint>& b, const std::vector<FixedPoint>& c,
                Polarity polarity);

// Clock-division product: output length n_A*n_B, bit t = a[t mod n_A] AND
// b[t div n_A]; popcount is exactly popcount(a)*popcount(b).
UnaryStream unary_multiply(const UnaryStream& a, const UnaryStream& b);

// OR of cyclically delayed equal-length streams. Exact when the delayed
// one-runs stay disjoint; overlap is the Unary adder's loss mechanism.
UnaryStream unary_add_or(const std::vector<UnaryStream>& streams,
                         const std::vector<long long>& delays);

// Largest ones count per input stream for which N delayed summands can stay
// disjoint: v_max = floor(n / (ceil((sqrt(4N+1)-1)/2) + 1)).
long long unary_accuracy_bound(long long n, long long summands);

struct UnaryMacResult {
    double value = 0.0;          // OR-sum stream value (saturates at 1)
    long long ones = 0;          // popcount of the OR-sum stream
    size_t stream_len = 0;       // n^2
    long long latency_cycles = 0;  // M * n^2: every product needs n^2 cycles
};

// Full Unary MAC: operands scaled to base length n (ones = code*n/2^N, i.e.
// the code itself when n = 2^N), multiplied, delay-ORed with the default
// schedule delay_i = i*floor(n^2/M) (overridable), then decoded.
UnaryMacResult unary_mac(const std::vector<FixedPoint>& b, const std::vector<FixedPoint>& c,
                         size_t n, const std::vector<long long>* delays = nullptr);

}  // namespace htcsim
