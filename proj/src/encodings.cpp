#include "htcsim/encodings.hpp"

#include <array>
#include <memory>
#include <mutex>

namespace htcsim {

namespace {

// Fill the first `n` bits with ones: whole words, then the partial word.
void fill_ones_prefix(std::vector<uint64_t>& w, size_t n) {
    size_t i = 0;
    for (; n >= 64; ++i, n -= 64) w[i] = ~uint64_t{0};
    if (n) w[i] = (uint64_t{1} << n) - 1;
}

}  // namespace

Bitstream encode_tb(const FixedPoint& x) {
    x.check();
    Bitstream bs(x.span(), StreamFormat::TB, x.polarity);
    fill_ones_prefix(bs.words(), x.code);
    return bs;
}

Bitstream encode_rb(const FixedPoint& x) {
    x.check();
    const size_t L = x.span();
    Bitstream bs(L, StreamFormat::RB, x.polarity);
    for (uint32_t t = 1; t <= L; ++t)
        if (rb_bit(x.code, x.bits, t)) bs.set_bit(t - 1, true);
    return bs;
}

double decode(const Bitstream& bs) {
    const double L = static_cast<double>(bs.size());
    const double pc = static_cast<double>(bs.popcount());
    if (bs.polarity() == Polarity::Unipolar) return pc / L;
    return 2.0 * pc / L - 1.0;
}

Bitstream gb_to_tb(const Bitstream& bs) {
    Bitstream out(bs.size(), StreamFormat::TB, bs.polarity());
    fill_ones_prefix(out.words(), bs.popcount());
    return out;
}

const StreamTables& stream_tables(int bits) {
    if (bits < 1 || bits > 16) throw ConfigError("stream_tables bits out of range [1,16]");
    static std::array<std::unique_ptr<StreamTables>, 17> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[static_cast<size_t>(bits)];
    if (!slot) {
        auto t = std::make_unique<StreamTables>();
        t->bits = bits;
        const size_t L = size_t{1} << bits;
        t->words_per_code = (L + 63) / 64;
        const size_t codes = L;
        t->rb.assign(codes * t->words_per_code, 0);
        t->tb.assign(codes * t->words_per_code, 0);
        for (uint32_t code = 0; code < codes; ++code) {
            const Bitstream rb = encode_rb(FixedPoint{bits, code, Polarity::Unipolar});
            const Bitstream tb = encode_tb(FixedPoint{bits, code, Polarity::Unipolar});
            for (size_t w = 0; w < t->words_per_code; ++w) {
                t->rb[code * t->words_per_code + w] = rb.words()[w];
                t->tb[code * t->words_per_code + w] = tb.words()[w];
            }
        }
        slot = std::move(t);
    }
    return *slot;
}

}  // namespace htcsim
