#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "htcsim/fixed_point.hpp"

namespace htcsim {

// Fibonacci LFSR generating the MUX selector bits. Taps are 1-indexed from
// the output end: tap p reads state bit (width - p). Right-shift form: the
// output is the lowest state bit; the XOR of the tapped bits is shifted in
// at the top. Default {8,6,5,4} is a maximal-length degree-8 polynomial.
//
// `divider` slows the selector clock: the register steps once every
// `divider` cycles (at cycles t = 0, divider, 2*divider, ...) and holds its
// state in between. divider = 1 is the plain one-step-per-cycle register.
struct LfsrState {
    int width = 8;                        // 2..32
    std::vector<int> taps = {8, 6, 5, 4}; // 1-indexed tap positions
    uint32_t state = 0x5A;                // never 0
    int divider = 1;

    uint64_t period_mask() const { return (uint64_t{1} << width) - 1; }

    void check() const {
        if (width < 2 || width > 32)
            throw ConfigError("LFSR width out of range [2,32]: " + std::to_string(width));
        if (taps.empty())
            throw ConfigError("LFSR needs at least one tap");
        for (int p : taps)
            if (p < 1 || p > width)
                throw ConfigError("LFSR tap " + std::to_string(p) + " out of range [1," +
                                  std::to_string(width) + "]");
        if (state == 0 || (static_cast<uint64_t>(state) & ~period_mask()) != 0)
            throw ConfigError("LFSR state must be nonzero and fit the register width");
        if (divider < 1)
            throw ConfigError("LFSR divider must be >= 1");
    }
};

// One shift: returns (output bit, successor state). Pure; never reaches 0
// from a nonzero state because feedback of the sole surviving 1 re-enters.
inline std::pair<int, LfsrState> lfsr_next(const LfsrState& s) {
    s.check();
    uint32_t fb = 0;
    for (int p : s.taps) fb ^= (s.state >> (s.width - p)) & 1u;
    const int out = static_cast<int>(s.state & 1u);
    LfsrState nxt = s;
    nxt.state = (s.state >> 1) | (fb << (s.width - 1));
    return {out, nxt};
}

// Raw-state step for inner loops (no validation, no copy of the tap list).
inline uint32_t lfsr_step_state(uint32_t state, int width, const std::vector<int>& taps) {
    uint32_t fb = 0;
    for (int p : taps) fb ^= (state >> (width - p)) & 1u;
    return (state >> 1) | (fb << (width - 1));
}

}  // namespace htcsim
