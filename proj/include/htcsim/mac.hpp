#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "htcsim/bitstream.hpp"
#include "htcsim/encodings.hpp"
#include "htcsim/fixed_point.hpp"
#include "htcsim/lfsr.hpp"

namespace htcsim {

// Round-robin MUX selector: at epoch-local cycle t the selected input is
// ((t / dwell) + phase) mod K. When a MAC runs several accumulation epochs
// the phase advances by one each epoch, so with dwell = K every
// (dwell-block, input) pairing is visited exactly once per K epochs.
struct RoundRobin {
    int dwell = 1;
    int phase = 0;
};

using Selector = std::variant<LfsrState, RoundRobin>;

// Everything that determines an HTC MAC instance. One epoch is 2^bits
// cycles (all stream generators share the single epoch up-counter);
// `epochs` > 1 keeps accumulating over repeated epochs before the binary
// result is read out.
struct MacConfig {
    int bits = 8;
    int fan_in = 4;                      // K, power of two in [2,16]
    Polarity polarity = Polarity::Unipolar;
    Selector selector = LfsrState{};
    int epochs = 1;

    size_t epoch() const { return size_t{1} << bits; }
    int sel_bits() const;                // log2 K
    void check() const;
};

// A named cycle-indexed wire recording, input to the switching-activity
// accounting.
struct WireTrace {
    std::string name;
    Bitstream bits;
};

struct MacResult {
    long long pc_total = 0;   // ones on the MUX output across all epochs
    double binary_sum = 0.0;  // accumulator readout (see accumulate())
    Bitstream out_tb;         // TB re-encoding of the MUX output, for propagation
    std::vector<WireTrace> trace;  // multiplier/MUX/selector wires; filled on request
};

// Cycle-wise product stream: AND of encode_rb(a) and encode_tb(b) for
// unipolar operands, XNOR for bipolar (offset-coded) operands. Result is a
// GB stream whose decode approximates value(a)*value(b).
Bitstream htc_multiply(const FixedPoint& a, const FixedPoint& b, Polarity polarity);

// K:1 MUX over one epoch: output bit t = inputs[sel(t)][t]. decode of the
// output approximates the scaled sum (1/K) * sum of input values.
Bitstream scaled_add(const std::vector<Bitstream>& inputs, const MacConfig& cfg);

// Accumulator readout for a MUX output stream spanning E epochs:
//   unipolar: K * pc / (E * 2^N)          (popcount shifted left by log2 K)
//   bipolar : K * (2 * pc / (E * 2^N) - 1)
double accumulate(const Bitstream& bs, const MacConfig& cfg);

// The K-input MAC pipeline: K multipliers -> MUX -> accumulator, plus the
// TB re-encoding of the MUX output. b_i are encoded in RB form, c_i in TB
// form. With `with_trace` the result carries every multiplier output, the
// MUX output, the selector bit wires and the TB output wire.
MacResult htc_mac(const std::vector<FixedPoint>& b, const std::vector<FixedPoint>& c,
                  const MacConfig& cfg, bool with_trace = false);

// M-input dot product: zero-pads M up to a multiple of K, runs ceil(M/K)
// MACs and combines their binary sums by exact binary addition. When
// `unit_phases` is non-empty it overrides the RoundRobin phase per MAC unit
// (the per-unit seeding used by the image pipelines).
double htc_dot(const std::vector<FixedPoint>& b, const std::vector<FixedPoint>& c,
               const MacConfig& cfg, const std::vector<int>& unit_phases = {});

namespace detail {

// MUX-output popcount over packed product streams, without materialising
// any wire. prods[i] points at the words of product stream i (one epoch,
// L = 2^bits cycles). Bit-exact with the traced path in htc_mac.
long long mux_popcount(const uint64_t* const* prods, int fan_in, int bits,
                       const Selector& sel, int epochs);

}  // namespace detail

}  // namespace htcsim
