#include "htcsim/apps.hpp"

#include <algorithm>
#include <cmath>

#include "htcsim/baselines.hpp"
#include "htcsim/encodings.hpp"
#include "htcsim/mac.hpp"
#include "htcsim/rng.hpp"
#include "htcsim/threads.hpp"

namespace htcsim {

namespace {

constexpr size_t kL = size_t{1} << kAppBits;          // 256 cycles per epoch
constexpr size_t kWordsPerCode = kL / 64;             // 4 packed words

inline uint8_t clip255(long long v) {
    return static_cast<uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
}

// Floor division for signed numerators (denominator positive).
inline long long floordiv(long long a, long long b) {
    long long q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

// The 8-slot tap neighborhood of output (y, x): slots 0..5 are the offset
// j-2 pixels along the pass axis with edge replication, slots 6..7 feed the
// zero taps.
inline void gather8(const uint8_t* img, int w, int h, int y, int x, int axis,
                    uint32_t nb[8]) {
    if (axis == 1) {
        for (int j = 0; j < 6; ++j) nb[j] = img[static_cast<size_t>(y) * w + clampi(x + j - 2, 0, w - 1)];
    } else {
        for (int j = 0; j < 6; ++j) nb[j] = img[static_cast<size_t>(clampi(y + j - 2, 0, h - 1)) * w + x];
    }
    nb[6] = nb[7] = 0;
}

// One fan-in-4, dwell-4 round-robin MAC over kAppEpochs epochs: popcount of
// the MUX output. Products are already packed, one epoch each (the engine
// replays the epoch with the selector phase advancing by one per epoch).
inline long long rr_mac_pc(const uint64_t* const* prods, int phase) {
    return detail::mux_popcount(prods, kAppFanIn, kAppBits,
                                Selector{RoundRobin{kAppDwell, phase}}, kAppEpochs);
}

// ---------------------------------------------------------------- FIR ----

struct FirPassCtx {
    const StreamTables* tabs;
    std::array<const uint64_t*, 8> tap_tb;   // TB words per slot
    std::array<uint32_t, 8> tap_codes;
    uint64_t selector_seed;
};

void fir_pass_stochastic(Design design, const FirPassCtx& ctx, const std::vector<uint8_t>& in,
                         std::vector<uint8_t>& out, int w, int h, int axis, int pass_i,
                         int threads) {
    parallel_chunks(static_cast<size_t>(h), 16, threads, [&](size_t lo, size_t hi, size_t) {
        uint32_t nb[8];
        uint64_t prod[kAppFanIn][kWordsPerCode];
        const uint64_t* ptrs[kAppFanIn] = {prod[0], prod[1], prod[2], prod[3]};
        std::vector<FixedPoint> vb(8, FixedPoint{kAppBits, 0, Polarity::Unipolar});
        std::vector<FixedPoint> vc(8, FixedPoint{kAppBits, 0, Polarity::Unipolar});

        for (size_t y = lo; y < hi; ++y) {
            for (int x = 0; x < w; ++x) {
                gather8(in.data(), w, h, static_cast<int>(y), x, axis, nb);
                long long code = 0;
                switch (design) {
                    case Design::Htc: {
                        long long s = 0;
                        for (int mac = 0; mac < 2; ++mac) {
                            for (int i = 0; i < kAppFanIn; ++i) {
                                const int slot = 4 * mac + i;
                                const uint64_t* rb = ctx.tabs->rb_words(nb[slot]);
                                const uint64_t* tb = ctx.tap_tb[slot];
                                for (size_t wd = 0; wd < kWordsPerCode; ++wd)
                                    prod[i][wd] = rb[wd] & tb[wd];
                            }
                            const int phase = static_cast<int>(
                                derive_lfsr_state(8, ctx.selector_seed,
                                                  stream_id(pass_i, y, x, mac)) %
                                kAppFanIn);
                            s += rr_mac_pc(ptrs, phase);
                        }
                        // value*256 = 4*s/epochs, rounded half away from zero
                        code = (8 * s + kAppEpochs) / (2 * kAppEpochs);
                        break;
                    }
                    case Design::Cbsc: {
                        // window = tap code, counted stream = RB(pixel)
                        for (int j = 0; j < 8; ++j) {
                            vb[j].code = ctx.tap_codes[j];
                            vc[j].code = nb[j];
                        }
                        code = cbsc_mac_num(vb, vc, Polarity::Unipolar);
                        break;
                    }
                    case Design::Unary:
                    default: {
                        // pixel = ones per row, tap = row count
                        for (int j = 0; j < 8; ++j) {
                            vb[j].code = nb[j];
                            vc[j].code = ctx.tap_codes[j];
                        }
                        const long long ones = unary_mac(vb, vc, kL).ones;
                        code = (ones * 256 + 32768) / 65536;
                        break;
                    }
                }
                out[y * w + x] = clip255(code);
            }
        }
    });
}

// Quantised-tap reference convolution in doubles; every product is an exact
// dyadic, so the result is order-independent.
std::vector<double> fir_pass_oracle(const std::vector<double>& in, int w, int h, int axis,
                                    const std::array<uint32_t, 8>& tap_codes) {
    double taps[6];
    for (int j = 0; j < 6; ++j) taps[j] = static_cast<double>(tap_codes[j]) / 256.0;
    std::vector<double> out(in.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int j = 0; j < 6; ++j) {
                const int sy = axis == 1 ? y : clampi(y + j - 2, 0, h - 1);
                const int sx = axis == 1 ? clampi(x + j - 2, 0, w - 1) : x;
                acc += in[static_cast<size_t>(sy) * w + sx] * taps[j];
            }
            out[static_cast<size_t>(y) * w + x] = acc;
        }
    }
    return out;
}

// ---------------------------------------------------------------- DCT ----

GrayImage pad_to_blocks(const GrayImage& img) {
    const int pw = (img.width + 7) & ~7;
    const int ph = (img.height + 7) & ~7;
    if (pw == img.width && ph == img.height) return img;
    GrayImage out;
    out.width = pw;
    out.height = ph;
    out.data.resize(static_cast<size_t>(pw) * ph);
    for (int y = 0; y < ph; ++y)
        for (int x = 0; x < pw; ++x)
            out.data[static_cast<size_t>(y) * pw + x] =
                img.at(std::min(y, img.height - 1), std::min(x, img.width - 1));
    return out;
}

// One DCT pass: every 8-vector along `axis` is replaced by its dot products
// with the 8 quantised basis rows. pass_i threads into the selector ids.
void dct_pass(Design design, const std::array<std::array<uint32_t, 8>, 8>& mq,
              const std::vector<uint8_t>& in, std::vector<uint8_t>& out, int w, int h,
              int axis, int pass_i, uint64_t selector_seed, int threads) {
    const auto& tabs = stream_tables(kAppBits);
    const size_t outer = axis == 1 ? static_cast<size_t>(h) : static_cast<size_t>(w);
    const size_t nblk = axis == 1 ? static_cast<size_t>(w) / 8 : static_cast<size_t>(h) / 8;

    parallel_chunks(outer, 8, threads, [&](size_t lo, size_t hi, size_t) {
        uint32_t vec[8];
        uint64_t prod[kAppFanIn][kWordsPerCode];
        const uint64_t* ptrs[kAppFanIn] = {prod[0], prod[1], prod[2], prod[3]};
        std::vector<FixedPoint> vb(8, FixedPoint{kAppBits, 0, Polarity::Bipolar});
        std::vector<FixedPoint> vc(8, FixedPoint{kAppBits, 0, Polarity::Bipolar});

        for (size_t o = lo; o < hi; ++o) {
            for (size_t blk = 0; blk < nblk; ++blk) {
                for (int m = 0; m < 8; ++m)
                    vec[m] = axis == 1 ? in[o * w + 8 * blk + m]
                                       : in[(8 * blk + m) * static_cast<size_t>(w) + o];
                for (int k = 0; k < 8; ++k) {
                    long long code;
                    if (design == Design::Htc) {
                        long long s = 0;
                        for (int mac = 0; mac < 2; ++mac) {
                            for (int i = 0; i < kAppFanIn; ++i) {
                                const int slot = 4 * mac + i;
                                const uint64_t* rb = tabs.rb_words(vec[slot]);
                                const uint64_t* tb = tabs.tb_words(mq[k][slot]);
                                for (size_t wd = 0; wd < kWordsPerCode; ++wd)
                                    prod[i][wd] = ~(rb[wd] ^ tb[wd]);
                            }
                            const int phase = static_cast<int>(
                                derive_lfsr_state(8, selector_seed,
                                                  stream_id(pass_i, o, blk, 2 * k + mac)) %
                                kAppFanIn);
                            s += rr_mac_pc(ptrs, phase);
                        }
                        // acc = sum over both MACs of 4*(2*pc/(E*256) - 1);
                        // output code = clip(round((acc+1)*128))
                        const long long num = 8 * s - 2048 * kAppEpochs;
                        code = floordiv(num + kAppEpochs, 2 * kAppEpochs) + 128;
                    } else {  // Cbsc
                        for (int j = 0; j < 8; ++j) {
                            vb[j].code = mq[k][j];
                            vc[j].code = vec[j];
                        }
                        const long long num = cbsc_mac_num(vb, vc, Polarity::Bipolar);
                        code = floordiv(num + 1, 2) + 128;
                    }
                    if (axis == 1)
                        out[o * w + 8 * blk + k] = clip255(code);
                    else
                        out[(8 * blk + k) * static_cast<size_t>(w) + o] = clip255(code);
                }
            }
        }
    });
}

GrayImage dct_oracle(const GrayImage& padded) {
    const auto c = dct8_matrix();
    double f[8][8], inv[8][8];
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            f[i][j] = c[i][j] / 2.0;
            inv[i][j] = 2.0 * c[j][i];
        }
    GrayImage out = padded;
    const int w = padded.width;
    double b[8][8], t[8][8], y[8][8], r[8][8];
    for (int by = 0; by < padded.height; by += 8) {
        for (int bx = 0; bx < w; bx += 8) {
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j)
                    b[i][j] = (padded.data[static_cast<size_t>(by + i) * w + bx + j] - 128.0) / 128.0;
            // y = f (b f^T), r = inv (y inv^T)
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j) {
                    double a = 0.0;
                    for (int m = 0; m < 8; ++m) a += b[i][m] * f[j][m];
                    t[i][j] = a;
                }
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j) {
                    double a = 0.0;
                    for (int m = 0; m < 8; ++m) a += f[i][m] * t[m][j];
                    y[i][j] = a;
                }
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j) {
                    double a = 0.0;
                    for (int m = 0; m < 8; ++m) a += y[i][m] * inv[j][m];
                    t[i][j] = a;
                }
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j) {
                    double a = 0.0;
                    for (int m = 0; m < 8; ++m) a += inv[i][m] * t[m][j];
                    r[i][j] = a;
                }
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j)
                    out.data[static_cast<size_t>(by + i) * w + bx + j] =
                        clip255(static_cast<long long>(std::nearbyint(r[i][j] * 128.0 + 128.0)));
        }
    }
    return out;
}

std::array<std::array<uint32_t, 8>, 8> quantize_bipolar(const double m[8][8]) {
    std::array<std::array<uint32_t, 8>, 8> q{};
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            const double v = std::nearbyint((m[i][j] + 1.0) * 128.0);
            q[i][j] = static_cast<uint32_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
        }
    return q;
}

}  // namespace

std::array<double, 6> gaussian6_taps() {
    return {1.0 / 32, 5.0 / 32, 10.0 / 32, 10.0 / 32, 5.0 / 32, 1.0 / 32};
}

std::array<uint32_t, 8> gaussian6_tap_codes() { return {8, 40, 80, 80, 40, 8, 0, 0}; }

GrayImage fir_apply(const GrayImage& img, const FirSpec& spec) {
    if (img.width < 1 || img.height < 1 || img.data.size() != static_cast<size_t>(img.width) * img.height)
        throw ConfigError("fir_apply needs a non-empty image");
    for (uint32_t t : spec.tap_codes)
        if (t > 255) throw ConfigError("fir_apply tap codes are 8-bit");

    GrayImage out = img;
    if (spec.design == Design::Oracle) {
        std::vector<double> cur(img.data.begin(), img.data.end());
        cur = fir_pass_oracle(cur, img.width, img.height, 1, spec.tap_codes);
        if (!spec.rows_only)
            cur = fir_pass_oracle(cur, img.width, img.height, 0, spec.tap_codes);
        for (size_t i = 0; i < cur.size(); ++i)
            out.data[i] = clip255(static_cast<long long>(std::nearbyint(cur[i])));
        return out;
    }

    FirPassCtx ctx;
    ctx.tabs = &stream_tables(kAppBits);
    ctx.tap_codes = spec.tap_codes;
    for (int j = 0; j < 8; ++j) ctx.tap_tb[j] = ctx.tabs->tb_words(spec.tap_codes[j]);
    ctx.selector_seed = spec.selector_seed;

    std::vector<uint8_t> stage(out.data.size());
    fir_pass_stochastic(spec.design, ctx, img.data, stage, img.width, img.height, 1, 0,
                        spec.threads);
    if (spec.rows_only) {
        out.data = stage;
        return out;
    }
    fir_pass_stochastic(spec.design, ctx, stage, out.data, img.width, img.height, 0, 1,
                        spec.threads);
    return out;
}

std::array<std::array<double, 8>, 8> dct8_matrix() {
    std::array<std::array<double, 8>, 8> c{};
    const double pi = 3.14159265358979323846;
    for (int k = 0; k < 8; ++k)
        for (int m = 0; m < 8; ++m)
            c[k][m] = std::sqrt(2.0 / 8.0) * std::cos((2 * m + 1) * k * pi / 16.0);
    for (int m = 0; m < 8; ++m) c[0][m] *= 1.0 / std::sqrt(2.0);
    return c;
}

std::array<std::array<uint32_t, 8>, 8> dct8_forward_codes() {
    const auto c = dct8_matrix();
    double f[8][8];
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) f[i][j] = c[i][j] / 2.0;
    return quantize_bipolar(f);
}

std::array<std::array<uint32_t, 8>, 8> dct8_inverse_codes() {
    const auto c = dct8_matrix();
    double inv[8][8];
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) inv[i][j] = 2.0 * c[j][i];
    return quantize_bipolar(inv);
}

DctResult dct_roundtrip(const GrayImage& img, const DctSpec& spec) {
    if (img.width < 1 || img.height < 1 || img.data.size() != static_cast<size_t>(img.width) * img.height)
        throw ConfigError("dct_roundtrip needs a non-empty image");
    if (spec.design == Design::Unary)
        throw ConfigError("dct_roundtrip: the OR-accumulating Unary MAC has no signed mode");

    const GrayImage padded = pad_to_blocks(img);

    GrayImage rec;
    if (spec.design == Design::Oracle) {
        rec = dct_oracle(padded);
    } else {
        const auto fq = dct8_forward_codes();
        const auto iq = dct8_inverse_codes();
        // rows forward, columns forward, columns inverse, rows inverse
        const struct {
            const std::array<std::array<uint32_t, 8>, 8>* mq;
            int axis;
        } passes[4] = {{&fq, 1}, {&fq, 0}, {&iq, 0}, {&iq, 1}};
        std::vector<uint8_t> cur = padded.data;
        std::vector<uint8_t> nxt(cur.size());
        for (int p = 0; p < 4; ++p) {
            dct_pass(spec.design, *passes[p].mq, cur, nxt, padded.width, padded.height,
                     passes[p].axis, p, spec.selector_seed, spec.threads);
            cur.swap(nxt);
        }
        rec.width = padded.width;
        rec.height = padded.height;
        rec.data = std::move(cur);
    }

    DctResult res;
    res.image.width = img.width;
    res.image.height = img.height;
    res.image.data.resize(img.data.size());
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            res.image.data[static_cast<size_t>(y) * img.width + x] = rec.at(y, x);
    const auto [psnr, rmse] = image_metrics(img, res.image);
    res.psnr_db = psnr;
    res.rmse_norm = rmse;
    return res;
}

}  // namespace htcsim
