#pragma once

#include <cstdint>

namespace htcsim {

// SplitMix64: the fixed pseudo-random source behind every stochastic choice
// in the benchmarks (vector draws, per-trial/per-block selector seeding).
// Chosen for its tiny state, full 64-bit avalanche and trivial portability;
// all downstream results are bit-reproducible given the user seed.
inline uint64_t splitmix64_mix(uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        return splitmix64_mix(state_);
    }

  private:
    uint64_t state_;
};

// Independent generator for trial index `trial` under user seed `seed`.
// Mixing both sides keeps trials decorrelated and order-independent, so a
// benchmark can be chunked across workers without changing its draws.
inline SplitMix64 trial_stream(uint64_t seed, uint64_t trial) {
    return SplitMix64(splitmix64_mix(seed) ^ splitmix64_mix(trial + 0x517CC1B727220A95ull));
}

// Deterministic nonzero LFSR state for stream `stream_id`, derived from the
// configured base state. Result lies in [1, 2^width - 1].
inline uint32_t derive_lfsr_state(int width, uint64_t base_state, uint64_t stream_id) {
    const uint64_t h = SplitMix64(base_state ^ splitmix64_mix(stream_id)).next();
    return static_cast<uint32_t>(h % ((uint64_t{1} << width) - 1)) + 1;
}

}  // namespace htcsim
