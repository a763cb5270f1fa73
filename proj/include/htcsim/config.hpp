#pragma once

#include <string>
#include <vector>

#include "htcsim/apps.hpp"
#include "htcsim/metrics.hpp"

namespace htcsim {

inline Polarity polarity_from_string(const std::string& s) {
    if (s == "unipolar") return Polarity::Unipolar;
    if (s == "bipolar") return Polarity::Bipolar;
    throw ConfigError("unknown polarity '" + s + "' (expected unipolar|bipolar)");
}

// One bag of knobs behind every CLI subcommand: defaults here are the
// defaults the tool documents. String-typed enums so that flag parsing,
// key=value config files and error messages share one vocabulary.
struct RunConfig {
    std::string design = "htc";
    int bits = 8;
    int fan_in = 4;
    std::string polarity = "unipolar";
    long long trials = 100000;
    uint64_t seed = 42;
    int lfsr_width = 8;
    std::vector<int> lfsr_taps = {8, 6, 5, 4};
    uint32_t lfsr_seed = 0x5A;
    int lfsr_divider = 12;
    int threads = 0;
    bool zero_vectors = false;

    std::string input;       // PGM path ("" = use --synth)
    std::string output;      // PGM path ("" = don't write)
    int synth_width = 256;
    int synth_height = 256;

    Design design_enum() const { return design_from_string(design); }
    Polarity polarity_enum() const { return polarity_from_string(polarity); }

    BenchConfig bench() const {
        BenchConfig b;
        b.bits = bits;
        b.fan_in = fan_in;
        b.polarity = polarity_enum();
        b.trials = trials;
        b.seed = seed;
        b.lfsr_width = lfsr_width;
        b.lfsr_taps = lfsr_taps;
        b.lfsr_seed = lfsr_seed;
        b.lfsr_divider = lfsr_divider;
        b.threads = threads;
        b.zero_vectors = zero_vectors;
        return b;
    }

    FirSpec fir() const {
        FirSpec f;
        f.design = design_enum();
        f.threads = threads;
        f.selector_seed = lfsr_seed;
        return f;
    }

    DctSpec dct() const {
        DctSpec d;
        d.design = design_enum();
        d.threads = threads;
        d.selector_seed = lfsr_seed;
        return d;
    }
};

}  // namespace htcsim
