#include "htcsim/baselines.hpp"

#include <cmath>
#include <cstdlib>

#include "htcsim/bitstream.hpp"
#include "htcsim/encodings.hpp"

namespace htcsim {

namespace {

// OR a run of `count` ones starting at cyclic position `start` into a
// stream of `len` bits (wraps around the end).
void or_run(std::vector<uint64_t>& dst, size_t len, size_t start, size_t count) {
    while (count) {
        const size_t pos = start % len;
        const size_t chunk_end = std::min(pos + count, len);
        size_t t = pos;
        // Head: align to a word boundary, then blast whole words.
        while (t < chunk_end && (t & 63)) {
            dst[t >> 6] |= uint64_t{1} << (t & 63);
            ++t;
        }
        while (t + 64 <= chunk_end) {
            dst[t >> 6] = ~uint64_t{0};
            t += 64;
        }
        while (t < chunk_end) {
            dst[t >> 6] |= uint64_t{1} << (t & 63);
            ++t;
        }
        count -= chunk_end - pos;
        start = chunk_end;  // == len on wrap, so pos restarts at 0
    }
}

size_t popcount_words(const std::vector<uint64_t>& w) {
    size_t n = 0;
    for (uint64_t v : w) n += static_cast<size_t>(__builtin_popcountll(v));
    return n;
}

}  // namespace

UnaryStream UnaryStream::prefix(size_t len, size_t ones) {
    if (len < 1) throw ConfigError("UnaryStream length must be >= 1");
    if (ones > len) throw ConfigError("UnaryStream ones exceed length");
    UnaryStream s;
    s.len = len;
    s.words.assign((len + 63) / 64, 0);
    if (ones) or_run(s.words, len, 0, ones);
    return s;
}

size_t UnaryStream::popcount() const { return popcount_words(words); }

FixedPoint cbsc_multiply(const FixedPoint& w, const FixedPoint& x) {
    w.check();
    x.check();
    if (w.bits != x.bits) throw ConfigError("cbsc_multiply operand widths differ");
    if (w.polarity != Polarity::Unipolar || x.polarity != Polarity::Unipolar)
        throw ConfigError("cbsc_multiply counts unipolar operands");
    const auto& tabs = stream_tables(x.bits);
    const uint64_t* rb = tabs.rb_words(x.code);
    // Ones of RB(x) among the first w.code cycles.
    size_t num = 0, full = w.code >> 6;
    for (size_t i = 0; i < full; ++i) num += static_cast<size_t>(__builtin_popcountll(rb[i]));
    const size_t rem = w.code & 63;
    if (rem) num += static_cast<size_t>(__builtin_popcountll(rb[full] & ((uint64_t{1} << rem) - 1)));
    return FixedPoint{x.bits, static_cast<uint32_t>(num), Polarity::Unipolar};
}

namespace {

// Ones of the magnitude stream RB(mx) in an mw-cycle window, with the
// full-scale magnitude 2^N standing in as the all-ones stream. Both
// magnitudes lie in [0, 2^N].
long long mag_window_count(int bits, uint32_t mx, uint32_t mw) {
    const uint32_t full = 1u << bits;
    if (mx == full) return mw;
    const auto& tabs = stream_tables(bits);
    const uint64_t* rb = tabs.rb_words(mx);
    size_t n = 0, fw = mw >> 6;
    for (size_t i = 0; i < fw; ++i) n += static_cast<size_t>(__builtin_popcountll(rb[i]));
    const size_t rem = mw & 63;
    if (rem) n += static_cast<size_t>(__builtin_popcountll(rb[fw] & ((uint64_t{1} << rem) - 1)));
    return static_cast<long long>(n);
}

}  // namespace

long long cbsc_mac_num(const std::vector<FixedPoint>& b, const std::vector<FixedPoint>& c,
                       Polarity polarity) {
    if (b.size() != c.size() || b.empty())
        throw ConfigError("cbsc_mac expects equal-length non-empty operand vectors");
    const int bits = b[0].bits;
    long long num = 0;
    for (size_t i = 0; i < b.size(); ++i) {
        b[i].check();
        c[i].check();
        if (b[i].bits != bits || c[i].bits != bits)
            throw ConfigError("cbsc_mac operand widths differ");
        if (b[i].polarity != polarity || c[i].polarity != polarity)
            throw ConfigError("cbsc_mac operand polarity mismatch");
        if (polarity == Polarity::Unipolar) {
            num += cbsc_multiply(FixedPoint{bits, b[i].code, Polarity::Unipolar},
                                 FixedPoint{bits, c[i].code, Polarity::Unipolar})
                       .code;
        } else {
            const long long span = 1ll << bits;
            const long long sw = 2ll * b[i].code - span;
            const long long sx = 2ll * c[i].code - span;
            if (sw == 0 || sx == 0) continue;
            const long long sign = ((sw < 0) != (sx < 0)) ? -1 : 1;
            num += sign * mag_window_count(bits, static_cast<uint32_t>(std::llabs(sx)),
                                           static_cast<uint32_t>(std::llabs(sw)));
        }
    }
    return num;
}

double cbsc_mac(const std::vector<FixedPoint>& b, const std::vector<FixedPoint>& c,
                Polarity polarity) {
    const int bits = b.empty() ? 8 : b[0].bits;
    return static_cast<double>(cbsc_mac_num(b, c, polarity)) /
           static_cast<double>(1ll << bits);
}

UnaryStream unary_multiply(const UnaryStream& a, const UnaryStream& b) {
    if (a.len < 1 || b.len < 1) throw ConfigError("unary_multiply operands must be non-empty");
    UnaryStream out;
    out.len = a.len * b.len;
    out.words.assign((out.len + 63) / 64, 0);
    // One repetition of `a` for every set bit of `b` (clock-division rule):
    // bit t = a[t mod n_A] AND b[t div n_A].
    for (size_t f = 0; f < b.len; ++f) {
        if (!b.bit(f)) continue;
        for (size_t j = 0; j < a.len; ++j)
            if (a.bit(j)) out.set_bit(f * a.len + j);
    }
    return out;
}

UnaryStream unary_add_or(const std::vector<UnaryStream>& streams,
                         const std::vector<long long>& delays) {
    if (streams.empty() || streams.size() != delays.size())
        throw ConfigError("unary_add_or expects one delay per stream");
    const size_t len = streams[0].len;
    for (const auto& s : streams)
        if (s.len != len) throw ConfigError("unary_add_or streams must share one length");
    for (size_t i = 0; i < delays.size(); ++i)
        for (size_t j = i + 1; j < delays.size(); ++j)
            if (((delays[i] % static_cast<long long>(len)) + len) % len ==
                ((delays[j] % static_cast<long long>(len)) + len) % len)
                throw ConfigError("unary_add_or delays must be pairwise distinct");

    UnaryStream out;
    out.len = len;
    out.words.assign((len + 63) / 64, 0);
    for (size_t i = 0; i < streams.size(); ++i) {
        const size_t d = static_cast<size_t>(((delays[i] % static_cast<long long>(len)) + len) %
                                             static_cast<long long>(len));
        // OR the cyclically delayed stream in by runs of ones.
        size_t t = 0;
        while (t < len) {
            if (!streams[i].bit(t)) {
                ++t;
                continue;
            }
            size_t e = t;
            while (e < len && streams[i].bit(e)) ++e;
            or_run(out.words, len, t + d, e - t);
            t = e;
        }
    }
    return out;
}

long long unary_accuracy_bound(long long n, long long summands) {
    if (n < 1 || summands < 1) throw ConfigError("unary_accuracy_bound needs n, N >= 1");
    const double c = std::ceil((std::sqrt(4.0 * static_cast<double>(summands) + 1.0) - 1.0) / 2.0);
    return static_cast<long long>(static_cast<double>(n) / (c + 1.0));
}

UnaryMacResult unary_mac(const std::vector<FixedPoint>& b, const std::vector<FixedPoint>& c,
                         size_t n, const std::vector<long long>* delays) {
    if (b.size() != c.size() || b.empty())
        throw ConfigError("unary_mac expects equal-length non-empty operand vectors");
    if (n < 1) throw ConfigError("unary_mac base length must be >= 1");
    const size_t M = b.size();
    const size_t L2 = n * n;

    std::vector<long long> dl;
    if (delays) {
        dl = *delays;
        if (dl.size() != M) throw ConfigError("unary_mac expects one delay per summand");
    } else {
        for (size_t i = 0; i < M; ++i)
            dl.push_back(static_cast<long long>(i * (L2 / M)));
    }

    UnaryMacResult res;
    res.stream_len = L2;
    res.latency_cycles = static_cast<long long>(M) * static_cast<long long>(L2);

    std::vector<uint64_t> acc((L2 + 63) / 64, 0);
    for (size_t i = 0; i < M; ++i) {
        b[i].check();
        c[i].check();
        // Operand ones at base length n; the code itself when n = 2^N.
        const size_t oa = static_cast<size_t>(b[i].code) * n >> b[i].bits;
        const size_t ob = static_cast<size_t>(c[i].code) * n >> c[i].bits;
        const size_t d = static_cast<size_t>(((dl[i] % static_cast<long long>(L2)) + L2) %
                                             static_cast<long long>(L2));
        // Product of two prefix streams: ob rows, each a run of oa ones at
        // row pitch n; delayed cyclically by d.
        for (size_t f = 0; f < ob; ++f) or_run(acc, L2, f * n + d, oa);
    }
    res.ones = static_cast<long long>(popcount_words(acc));
    res.value = static_cast<double>(res.ones) / static_cast<double>(L2);
    return res;
}

}  // namespace htcsim
