#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "htcsim/fixed_point.hpp"
#include "htcsim/image.hpp"
#include "htcsim/mac.hpp"

namespace htcsim {

enum class Design { Htc, Cbsc, Unary, Oracle };

const char* to_string(Design d);
Design design_from_string(const std::string& s);

// Accuracy summary. Percentages are relative to the output full scale K
// (a K-input unipolar MAC sums to at most K). The exact integer fields are
// numerators over 2^(2N): err = design_numerator - exact_numerator; they
// make the reduction order-independent and the whole bench bit-reproducible.
struct ErrorStats {
    double rmse_pct = 0.0;
    double sde_pct = 0.0;
    double max_abs_err = 0.0;  // in value units of the dot product
    long long trials = 0;

    long long sum_err_num = 0;
    long long sum_sq_err_num = 0;  // fits: |e| <= K*2^(2N), trials <= ~1e8
    long long max_abs_err_num = 0;
};

// The MAC bench protocol: `trials` vectors of K operand pairs, each code
// drawn uniformly from [0, 2^N) by the seeded generator (b codes then c
// codes per trial); per-trial HTC selector state derived from (lfsr_seed,
// trial index). Error per trial = design dot - exact dot.
struct BenchConfig {
    int bits = 8;
    int fan_in = 4;
    Polarity polarity = Polarity::Unipolar;
    long long trials = 100000;
    uint64_t seed = 42;
    int lfsr_width = 8;
    std::vector<int> lfsr_taps = {8, 6, 5, 4};
    uint32_t lfsr_seed = 0x5A;
    int lfsr_divider = 12;
    int threads = 0;           // 0 = auto (HTC_SIM_THREADS-capped)
    bool zero_vectors = false; // all-zero draws (trivial smoke mode)
};

ErrorStats mac_error_bench(Design design, const BenchConfig& cfg);

// Exhaustive multiplier error sweep over all (a, b) code pairs at width N.
// Percentages relative to full scale 1.
ErrorStats exhaustive_mul_error(Design design, int bits, Polarity polarity);

// One sweep row per (a, b) pair: the product code and its absolute error
// numerator over 2^(2N). HTC and CBSC tables are identical by construction.
struct MulSweepRow {
    uint32_t a_code = 0;
    uint32_t b_code = 0;
    uint32_t product_code = 0;
    long long abs_err_num = 0;
};
std::vector<MulSweepRow> mul_sweep(Design design, int bits);

// Per-wire signal-transition counts (the energy proxy; wires idle low
// outside the epoch, so a trailing 1 pays its falling edge).
struct ActivityReport {
    std::map<std::string, long long> per_wire;

    long long total() const;
    void merge(const ActivityReport& other);
};

ActivityReport switching_activity(const std::vector<WireTrace>& traces);

// (psnr_db, rmse) with pixels normalised to [0,1]; psnr = 20*log10(1/rmse),
// +inf for identical images.
std::pair<double, double> image_metrics(const GrayImage& a, const GrayImage& b);

}  // namespace htcsim
