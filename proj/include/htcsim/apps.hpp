#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "htcsim/image.hpp"
#include "htcsim/metrics.hpp"

namespace htcsim {

// The image accelerators instantiate the 8-bit, fan-in-4 MAC: every dot
// product wider than 4 is split across two MACs whose binary outputs are
// combined. The stochastic designs integrate kAppEpochs epochs with a
// dwell-4 round-robin selector whose starting phase is derived per unit
// from (selector_seed, stream id), so independent units decorrelate while
// every run stays bit-reproducible.
inline constexpr int kAppBits = 8;
inline constexpr int kAppFanIn = 4;
inline constexpr int kAppEpochs = 10;
inline constexpr int kAppDwell = 4;

// Globally unique id of one MAC instance: pass index, output coordinates,
// unit index within the output site.
constexpr uint64_t stream_id(uint64_t pass, uint64_t y, uint64_t x, uint64_t unit) {
    return (pass << 56) | (y << 36) | (x << 16) | unit;
}

// 6-tap binomial low-pass (1,5,10,10,5,1)/32 and its 8-bit codes,
// zero-padded to the 8 MAC slots.
std::array<double, 6> gaussian6_taps();
std::array<uint32_t, 8> gaussian6_tap_codes();

struct FirSpec {
    Design design = Design::Htc;
    std::array<uint32_t, 8> tap_codes = gaussian6_tap_codes();
    bool rows_only = false;     // skip the column pass (diagnostics)
    int threads = 0;            // 0 = auto (HTC_SIM_THREADS-capped)
    uint64_t selector_seed = 0x5A;
};

// Separable 2-D FIR: rows (pass 0) then columns (pass 1), offset-2 tap
// alignment with edge replication. Pixels enter in the RB role, taps in
// the TB role; each 8-slot dot runs as two fan-in-4 MACs.
GrayImage fir_apply(const GrayImage& img, const FirSpec& spec);

// Orthonormal 8-point DCT-II basis; row k = frequency k.
std::array<std::array<double, 8>, 8> dct8_matrix();

// Bipolar quantisations actually wired into the accelerator: forward rows
// C/2 (headroom so an all-bright row cannot saturate the DC term) and
// inverse rows 2*C^T (undoing the halving).
std::array<std::array<uint32_t, 8>, 8> dct8_forward_codes();
std::array<std::array<uint32_t, 8>, 8> dct8_inverse_codes();

struct DctSpec {
    Design design = Design::Htc;   // Unary has no signed accumulator: rejected
    int threads = 0;
    uint64_t selector_seed = 0x5A;
};

struct DctResult {
    GrayImage image;        // reconstruction, same size as the input
    double psnr_db = 0.0;   // vs the input
    double rmse_norm = 0.0;
};

// 8x8 block DCT and immediate inverse: rows-forward, columns-forward,
// columns-inverse, rows-inverse (passes 0..3), bipolar arithmetic with
// code = pixel byte as the level shift. Non-multiple-of-8 images are
// edge-replicated up and cropped back.
DctResult dct_roundtrip(const GrayImage& img, const DctSpec& spec);

}  // namespace htcsim
