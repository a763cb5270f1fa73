#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace htcsim {

// Thrown on dimension / polarity / selector configuration violations.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Polarity { Unipolar, Bipolar };

inline const char* to_string(Polarity p) {
    return p == Polarity::Unipolar ? "unipolar" : "bipolar";
}

// An N-bit quantized number. The code n lies in [0, 2^N).
//   unipolar: value = n / 2^N          in [0, 1)
//   bipolar : value = (2n - 2^N) / 2^N in [-1, 1)   (offset-binary code)
struct FixedPoint {
    int      bits     = 8;                   // N, 1..16
    uint32_t code     = 0;                   // n
    Polarity polarity = Polarity::Unipolar;

    // Epoch length 2^N implied by the width.
    uint32_t span() const { return 1u << bits; }

    double value() const {
        if (polarity == Polarity::Unipolar)
            return static_cast<double>(code) / span();
        return (2.0 * code - span()) / span();
    }

    void check() const {
        if (bits < 1 || bits > 16)
            throw ConfigError("FixedPoint bits out of range [1,16]: " + std::to_string(bits));
        if (code >= span())
            throw ConfigError("FixedPoint code " + std::to_string(code) +
                              " out of range for " + std::to_string(bits) + " bits");
    }
};

inline FixedPoint make_unipolar(int bits, uint32_t code) {
    FixedPoint x{bits, code, Polarity::Unipolar};
    x.check();
    return x;
}

inline FixedPoint make_bipolar(int bits, uint32_t code) {
    FixedPoint x{bits, code, Polarity::Bipolar};
    x.check();
    return x;
}

// Two's-complement signed code -> bipolar FixedPoint. The offset code is
// n = s + 2^(N-1), i.e. the sign bit flipped, which realises p = (X+1)/2
// exactly for every representable code.
inline FixedPoint signed_to_offset(int32_t s, int bits) {
    if (bits < 1 || bits > 16)
        throw ConfigError("signed_to_offset bits out of range [1,16]");
    const int32_t half = 1 << (bits - 1);
    if (s < -half || s >= half)
        throw ConfigError("signed code " + std::to_string(s) + " out of range for " +
                          std::to_string(bits) + " bits");
    return make_bipolar(bits, static_cast<uint32_t>(s + half));
}

}  // namespace htcsim
