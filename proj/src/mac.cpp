#include "htcsim/mac.hpp"

#include <algorithm>

namespace htcsim {

namespace {

// Mask off the unused high bits of the last word so popcounts stay honest
// for epochs shorter than 64 cycles (XNOR would otherwise set them).
void mask_tail(std::vector<uint64_t>& words, size_t len) {
    const size_t rem = len & 63;
    if (rem) words.back() &= (uint64_t{1} << rem) - 1;
}

// Per-cycle selector evaluation shared by the traced MAC path and
// scaled_add. The LFSR steps once every `divider` cycles (at cycles
// 0, divider, 2*divider, ...) and the selector reads the low log2(K) bits
// of the register after the step; it free-runs across epochs. RoundRobin
// advances its phase by one per epoch.
class SelectorEngine {
  public:
    SelectorEngine(const Selector& sel, int fan_in, size_t epoch_len)
        : fan_in_(fan_in), epoch_len_(epoch_len) {
        if (const auto* l = std::get_if<LfsrState>(&sel)) {
            lfsr_ = true;
            width_ = l->width;
            taps_ = l->taps;
            state_ = l->state;
            divider_ = l->divider;
        } else {
            const auto& rr = std::get<RoundRobin>(sel);
            dwell_ = rr.dwell;
            phase_ = rr.phase;
        }
    }

    // Selector value for the current cycle; advances the cycle counter.
    int next() {
        int out;
        if (lfsr_) {
            if (t_ % divider_ == 0) state_ = lfsr_step_state(state_, width_, taps_);
            out = static_cast<int>(state_ & static_cast<uint32_t>(fan_in_ - 1));
        } else {
            const size_t e = t_ / epoch_len_;
            const size_t lt = t_ % epoch_len_;
            out = static_cast<int>((lt / static_cast<size_t>(dwell_) + static_cast<size_t>(phase_) + e) %
                                   static_cast<size_t>(fan_in_));
        }
        ++t_;
        return out;
    }

  private:
    int fan_in_;
    size_t epoch_len_;
    size_t t_ = 0;
    bool lfsr_ = false;
    int width_ = 0, divider_ = 1, dwell_ = 1, phase_ = 0;
    std::vector<int> taps_;
    uint32_t state_ = 0;
};

inline int bit_at(const uint64_t* words, size_t t) {
    return static_cast<int>((words[t >> 6] >> (t & 63)) & 1u);
}

}  // namespace

int MacConfig::sel_bits() const {
    int b = 0;
    while ((1 << (b + 1)) <= fan_in) ++b;
    return b;
}

void MacConfig::check() const {
    if (bits < 1 || bits > 16)
        throw ConfigError("MacConfig bits out of range [1,16]");
    if (fan_in < 2 || fan_in > 16 || (fan_in & (fan_in - 1)) != 0)
        throw ConfigError("MacConfig fan_in must be a power of two in [2,16]");
    if (epochs < 1)
        throw ConfigError("MacConfig epochs must be >= 1");
    if (const auto* l = std::get_if<LfsrState>(&selector)) {
        l->check();
    } else {
        const auto& rr = std::get<RoundRobin>(selector);
        if (rr.dwell < 1) throw ConfigError("RoundRobin dwell must be >= 1");
        if (rr.phase < 0) throw ConfigError("RoundRobin phase must be >= 0");
    }
}

Bitstream htc_multiply(const FixedPoint& a, const FixedPoint& b, Polarity polarity) {
    a.check();
    b.check();
    if (a.bits != b.bits)
        throw ConfigError("htc_multiply operand widths differ");
    if (a.polarity != polarity || b.polarity != polarity)
        throw ConfigError("htc_multiply operand polarity mismatch");

    const Bitstream rb = encode_rb(a);
    const Bitstream tb = encode_tb(b);
    Bitstream out(rb.size(), StreamFormat::GB, polarity);
    auto& w = out.words();
    if (polarity == Polarity::Unipolar) {
        for (size_t i = 0; i < w.size(); ++i) w[i] = rb.words()[i] & tb.words()[i];
    } else {
        for (size_t i = 0; i < w.size(); ++i) w[i] = ~(rb.words()[i] ^ tb.words()[i]);
        mask_tail(w, out.size());
    }
    return out;
}

Bitstream scaled_add(const std::vector<Bitstream>& inputs, const MacConfig& cfg) {
    cfg.check();
    if (static_cast<int>(inputs.size()) != cfg.fan_in)
        throw ConfigError("scaled_add expects exactly fan_in inputs");
    const size_t L = cfg.epoch();
    for (const auto& s : inputs)
        if (s.size() != L)
            throw ConfigError("scaled_add input length differs from the 2^N epoch");

    Bitstream out(L, StreamFormat::GB, cfg.polarity);
    SelectorEngine engine(cfg.selector, cfg.fan_in, L);
    for (size_t t = 0; t < L; ++t) {
        const int sel = engine.next();
        if (inputs[static_cast<size_t>(sel)].bit(t)) out.set_bit(t, true);
    }
    return out;
}

double accumulate(const Bitstream& bs, const MacConfig& cfg) {
    cfg.check();
    const double len = static_cast<double>(bs.size());
    const double pc = static_cast<double>(bs.popcount());
    if (cfg.polarity == Polarity::Unipolar) return cfg.fan_in * pc / len;
    return cfg.fan_in * (2.0 * pc / len - 1.0);
}

namespace detail {

long long mux_popcount(const uint64_t* const* prods, int fan_in, int bits,
                       const Selector& sel, int epochs) {
    const size_t L = size_t{1} << bits;
    const size_t words = (L + 63) / 64;

    if (const auto* rr = std::get_if<RoundRobin>(&sel)) {
        // Dwell-block fast path for the K=4 / dwell=4 accumulation MAC:
        // within every 64-bit word the 16 four-cycle blocks cycle through
        // the four block classes, so per-class ones counts come from four
        // fixed masks and each epoch's popcount is a class-count gather.
        if (fan_in == 4 && rr->dwell == 4 && (L & 63) == 0) {
            static constexpr uint64_t kClassMask = 0x000F000F000F000Full;
            long long cc[4][4];
            for (int i = 0; i < 4; ++i)
                for (int r = 0; r < 4; ++r) {
                    long long n = 0;
                    const uint64_t m = kClassMask << (4 * r);
                    for (size_t w = 0; w < words; ++w)
                        n += __builtin_popcountll(prods[i][w] & m);
                    cc[i][r] = n;
                }
            long long total = 0;
            for (int e = 0; e < epochs; ++e) {
                const int p = (rr->phase + e) % 4;
                for (int i = 0; i < 4; ++i) total += cc[i][(i - p + 4) & 3];
            }
            return total;
        }
        // Generic round-robin: per-cycle walk.
        long long total = 0;
        for (int e = 0; e < epochs; ++e) {
            const size_t p = static_cast<size_t>((rr->phase + e) % fan_in);
            for (size_t t = 0; t < L; ++t) {
                const size_t s = (t / static_cast<size_t>(rr->dwell) + p) % static_cast<size_t>(fan_in);
                total += bit_at(prods[s], t);
            }
        }
        return total;
    }

    // LFSR selector: the register free-runs across epochs with its divider.
    const auto& l = std::get<LfsrState>(sel);
    uint32_t state = l.state;
    const uint32_t kmask = static_cast<uint32_t>(fan_in - 1);
    long long total = 0;
    size_t g = 0;
    for (int e = 0; e < epochs; ++e) {
        for (size_t t = 0; t < L; ++t, ++g) {
            if (g % static_cast<size_t>(l.divider) == 0)
                state = lfsr_step_state(state, l.width, l.taps);
            total += bit_at(prods[state & kmask], t);
        }
    }
    return total;
}

}  // namespace detail

MacResult htc_mac(const std::vector<FixedPoint>& b, const std::vector<FixedPoint>& c,
                  const MacConfig& cfg, bool with_trace) {
    cfg.check();
    const size_t K = static_cast<size_t>(cfg.fan_in);
    if (b.size() != K || c.size() != K)
        throw ConfigError("htc_mac expects fan_in operand pairs");
    for (size_t i = 0; i < K; ++i) {
        b[i].check();
        c[i].check();
        if (b[i].bits != cfg.bits || c[i].bits != cfg.bits)
            throw ConfigError("htc_mac operand width differs from MacConfig");
        if (b[i].polarity != cfg.polarity || c[i].polarity != cfg.polarity)
            throw ConfigError("htc_mac operand polarity differs from MacConfig");
    }

    const auto& tabs = stream_tables(cfg.bits);
    const size_t L = cfg.epoch();
    const size_t W = tabs.words_per_code;

    // Multiplier outputs: AND (unipolar) / XNOR (bipolar) of the packed
    // RB(b_i) and TB(c_i) patterns; identical every epoch.
    std::vector<std::vector<uint64_t>> prod(K, std::vector<uint64_t>(W));
    for (size_t i = 0; i < K; ++i) {
        const uint64_t* rb = tabs.rb_words(b[i].code);
        const uint64_t* tb = tabs.tb_words(c[i].code);
        if (cfg.polarity == Polarity::Unipolar)
            for (size_t w = 0; w < W; ++w) prod[i][w] = rb[w] & tb[w];
        else
            for (size_t w = 0; w < W; ++w) prod[i][w] = ~(rb[w] ^ tb[w]);
        mask_tail(prod[i], L);
    }

    MacResult res;
    if (!with_trace) {
        std::vector<const uint64_t*> ptrs(K);
        for (size_t i = 0; i < K; ++i) ptrs[i] = prod[i].data();
        res.pc_total = detail::mux_popcount(ptrs.data(), cfg.fan_in, cfg.bits,
                                            cfg.selector, cfg.epochs);
    } else {
        // Traced path: materialise every wire cycle by cycle.
        const size_t total_len = L * static_cast<size_t>(cfg.epochs);
        const int sb = cfg.sel_bits();
        std::vector<WireTrace> wires;
        for (size_t i = 0; i < K; ++i)
            wires.push_back({"mul_" + std::to_string(i),
                             Bitstream(total_len, StreamFormat::GB, cfg.polarity)});
        Bitstream mux(total_len, StreamFormat::GB, cfg.polarity);
        std::vector<Bitstream> selw(static_cast<size_t>(sb),
                                    Bitstream(total_len, StreamFormat::GB, cfg.polarity));
        SelectorEngine engine(cfg.selector, cfg.fan_in, L);
        long long pc = 0;
        for (size_t g = 0; g < total_len; ++g) {
            const size_t t = g % L;
            const int sel = engine.next();
            for (size_t i = 0; i < K; ++i)
                if (bit_at(prod[i].data(), t)) wires[i].bits.set_bit(g, true);
            for (int j = 0; j < sb; ++j)
                if ((sel >> j) & 1) selw[static_cast<size_t>(j)].set_bit(g, true);
            if (bit_at(prod[static_cast<size_t>(sel)].data(), t)) {
                mux.set_bit(g, true);
                ++pc;
            }
        }
        res.pc_total = pc;
        wires.push_back({"mux", mux});
        for (int j = 0; j < sb; ++j)
            wires.push_back({"sel_" + std::to_string(j), selw[static_cast<size_t>(j)]});
        res.trace = std::move(wires);
    }

    const size_t total_len = L * static_cast<size_t>(cfg.epochs);
    const double flen = static_cast<double>(total_len);
    res.binary_sum = cfg.polarity == Polarity::Unipolar
                         ? cfg.fan_in * static_cast<double>(res.pc_total) / flen
                         : cfg.fan_in * (2.0 * static_cast<double>(res.pc_total) / flen - 1.0);

    // TB re-encoding for the next pipeline stage: same ones count, prefix
    // form, at most one rise and one fall over the whole accumulation.
    Bitstream out_tb(total_len, StreamFormat::TB, cfg.polarity);
    for (long long i = 0; i < res.pc_total; ++i) out_tb.set_bit(static_cast<size_t>(i), true);
    res.out_tb = out_tb;
    if (with_trace) res.trace.push_back({"out_tb", res.out_tb});
    return res;
}

double htc_dot(const std::vector<FixedPoint>& b, const std::vector<FixedPoint>& c,
               const MacConfig& cfg, const std::vector<int>& unit_phases) {
    cfg.check();
    if (b.size() != c.size() || b.empty())
        throw ConfigError("htc_dot expects equal-length non-empty operand vectors");
    if (!unit_phases.empty() && !std::holds_alternative<RoundRobin>(cfg.selector))
        throw ConfigError("htc_dot unit_phases requires a RoundRobin selector");

    const size_t K = static_cast<size_t>(cfg.fan_in);
    const size_t units = (b.size() + K - 1) / K;

    // Zero-value padding: unipolar code 0, bipolar midpoint code 2^(N-1).
    const uint32_t pad = cfg.polarity == Polarity::Unipolar ? 0u : (1u << (cfg.bits - 1));
    std::vector<FixedPoint> bp = b, cp = c;
    while (bp.size() < units * K) {
        bp.push_back(FixedPoint{cfg.bits, pad, cfg.polarity});
        cp.push_back(FixedPoint{cfg.bits, pad, cfg.polarity});
    }

    double sum = 0.0;
    for (size_t u = 0; u < units; ++u) {
        MacConfig ucfg = cfg;
        if (!unit_phases.empty()) {
            auto rr = std::get<RoundRobin>(cfg.selector);
            rr.phase = unit_phases[u % unit_phases.size()];
            ucfg.selector = rr;
        }
        const std::vector<FixedPoint> bu(bp.begin() + static_cast<long>(u * K),
                                         bp.begin() + static_cast<long>((u + 1) * K));
        const std::vector<FixedPoint> cu(cp.begin() + static_cast<long>(u * K),
                                         cp.begin() + static_cast<long>((u + 1) * K));
        sum += htc_mac(bu, cu, ucfg).binary_sum;  // exact binary combine
    }
    return sum;
}

}  // namespace htcsim
