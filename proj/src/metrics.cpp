#include "htcsim/metrics.hpp"

#include <cmath>
#include <limits>

#include "htcsim/baselines.hpp"
#include "htcsim/encodings.hpp"
#include "htcsim/rng.hpp"
#include "htcsim/threads.hpp"

namespace htcsim {

const char* to_string(Design d) {
    switch (d) {
        case Design::Htc: return "htc";
        case Design::Cbsc: return "cbsc";
        case Design::Unary: return "unary";
        default: return "oracle";
    }
}

Design design_from_string(const std::string& s) {
    if (s == "htc") return Design::Htc;
    if (s == "cbsc") return Design::Cbsc;
    if (s == "unary") return Design::Unary;
    if (s == "oracle") return Design::Oracle;
    throw ConfigError("unknown design '" + s + "' (expected htc|cbsc|unary|oracle)");
}

namespace {

struct ChunkSums {
    long long sum = 0;
    long long sum_sq = 0;
    long long max_abs = 0;
};

ErrorStats finalize(long long trials, int fan_in, int bits,
                    const std::vector<ChunkSums>& chunks) {
    ErrorStats st;
    st.trials = trials;
    for (const auto& c : chunks) {  // fixed chunk order; sums are exact anyway
        st.sum_err_num += c.sum;
        st.sum_sq_err_num += c.sum_sq;
        if (c.max_abs > st.max_abs_err_num) st.max_abs_err_num = c.max_abs;
    }
    const long double L2 = static_cast<long double>(1ll << (2 * bits));
    const long double mean = static_cast<long double>(st.sum_err_num) / trials;
    const long double mean_sq = static_cast<long double>(st.sum_sq_err_num) / trials;
    const long double var = mean_sq - mean * mean;
    st.rmse_pct = static_cast<double>(100.0L / fan_in * std::sqrt(mean_sq) / L2);
    st.sde_pct = static_cast<double>(100.0L / fan_in * std::sqrt(var < 0 ? 0 : var) / L2);
    st.max_abs_err = static_cast<double>(static_cast<long double>(st.max_abs_err_num) / L2);
    return st;
}

}  // namespace

ErrorStats mac_error_bench(Design design, const BenchConfig& cfg) {
    if (design == Design::Oracle)
        throw ConfigError("mac_error_bench compares the hardware designs: htc|cbsc|unary");
    if (cfg.trials < 1) throw ConfigError("mac_error_bench needs trials >= 1");
    if (cfg.polarity != Polarity::Unipolar)
        throw ConfigError("mac_error_bench protocol draws unipolar vectors");
    MacConfig probe{cfg.bits, cfg.fan_in, cfg.polarity,
                    LfsrState{cfg.lfsr_width, cfg.lfsr_taps, cfg.lfsr_seed, cfg.lfsr_divider}, 1};
    probe.check();  // validates bits/fan_in/LFSR ranges up front

    const size_t K = static_cast<size_t>(cfg.fan_in);
    const uint32_t cmask = (1u << cfg.bits) - 1;
    const size_t L = size_t{1} << cfg.bits;
    const auto& tabs = stream_tables(cfg.bits);
    const size_t W = tabs.words_per_code;

    const size_t n = static_cast<size_t>(cfg.trials);
    const size_t chunk = 4096;
    std::vector<ChunkSums> chunks((n + chunk - 1) / chunk);

    parallel_chunks(n, chunk, cfg.threads, [&](size_t lo, size_t hi, size_t ci) {
        ChunkSums cs;
        std::vector<uint32_t> b(K), c(K);
        std::vector<std::vector<uint64_t>> prod(K, std::vector<uint64_t>(W));
        std::vector<const uint64_t*> ptrs(K);
        for (size_t i = 0; i < K; ++i) ptrs[i] = prod[i].data();

        for (size_t t = lo; t < hi; ++t) {
            SplitMix64 g = trial_stream(cfg.seed, t);
            for (size_t i = 0; i < K; ++i) b[i] = cfg.zero_vectors ? 0 : (g.next() & cmask);
            for (size_t i = 0; i < K; ++i) c[i] = cfg.zero_vectors ? 0 : (g.next() & cmask);
            long long exact = 0;
            for (size_t i = 0; i < K; ++i)
                exact += static_cast<long long>(b[i]) * static_cast<long long>(c[i]);

            long long design_num = 0;  // over 2^(2N)
            switch (design) {
                case Design::Htc: {
                    // b_i in RB form AND c_i in TB form, MUX'd by the
                    // per-trial LFSR, read out as K * pc * 2^N.
                    for (size_t i = 0; i < K; ++i) {
                        const uint64_t* rb = tabs.rb_words(b[i]);
                        const uint64_t* tb = tabs.tb_words(c[i]);
                        for (size_t w = 0; w < W; ++w) prod[i][w] = rb[w] & tb[w];
                    }
                    LfsrState sel{cfg.lfsr_width, cfg.lfsr_taps,
                                  derive_lfsr_state(cfg.lfsr_width, cfg.lfsr_seed, t),
                                  cfg.lfsr_divider};
                    const long long pc =
                        detail::mux_popcount(ptrs.data(), cfg.fan_in, cfg.bits, Selector{sel}, 1);
                    design_num = static_cast<long long>(cfg.fan_in) * pc * static_cast<long long>(L);
                    break;
                }
                case Design::Cbsc: {
                    // Counting core: ones of RB(c_i) inside the b_i-cycle
                    // window, summed in binary, scaled by 2^N.
                    long long cnt = 0;
                    for (size_t i = 0; i < K; ++i) {
                        const uint64_t* rb = tabs.rb_words(c[i]);
                        size_t full = b[i] >> 6, ones = 0;
                        for (size_t w = 0; w < full; ++w)
                            ones += static_cast<size_t>(__builtin_popcountll(rb[w]));
                        const size_t rem = b[i] & 63;
                        if (rem)
                            ones += static_cast<size_t>(
                                __builtin_popcountll(rb[full] & ((uint64_t{1} << rem) - 1)));
                        cnt += static_cast<long long>(ones);
                    }
                    design_num = cnt * static_cast<long long>(L);
                    break;
                }
                case Design::Unary:
                default: {
                    std::vector<FixedPoint> fb, fc;
                    for (size_t i = 0; i < K; ++i) {
                        fb.push_back(FixedPoint{cfg.bits, b[i], Polarity::Unipolar});
                        fc.push_back(FixedPoint{cfg.bits, c[i], Polarity::Unipolar});
                    }
                    design_num = unary_mac(fb, fc, L).ones;
                    break;
                }
            }

            const long long e = design_num - exact;
            cs.sum += e;
            cs.sum_sq += e * e;
            const long long a = e < 0 ? -e : e;
            if (a > cs.max_abs) cs.max_abs = a;
        }
        chunks[ci] = cs;
    });

    return finalize(cfg.trials, cfg.fan_in, cfg.bits, chunks);
}

std::vector<MulSweepRow> mul_sweep(Design design, int bits) {
    if (design != Design::Htc && design != Design::Cbsc)
        throw ConfigError("mul_sweep covers the counting multipliers: htc|cbsc");
    if (bits < 1 || bits > 10) throw ConfigError("mul_sweep bits out of range [1,10]");
    const auto& tabs = stream_tables(bits);
    const uint32_t L = 1u << bits;
    std::vector<MulSweepRow> rows;
    rows.reserve(static_cast<size_t>(L) * L);
    for (uint32_t a = 0; a < L; ++a) {
        const uint64_t* rb = tabs.rb_words(a);
        for (uint32_t b = 0; b < L; ++b) {
            // Same counting quantity either way: HTC pops the AND of RB(a)
            // with TB(b); CBSC counts RB(a) ones in the b-cycle window.
            size_t full = b >> 6, ones = 0;
            for (size_t w = 0; w < full; ++w)
                ones += static_cast<size_t>(__builtin_popcountll(rb[w]));
            const size_t rem = b & 63;
            if (rem)
                ones += static_cast<size_t>(
                    __builtin_popcountll(rb[full] & ((uint64_t{1} << rem) - 1)));
            MulSweepRow r;
            r.a_code = a;
            r.b_code = b;
            r.product_code = static_cast<uint32_t>(ones);
            const long long err = static_cast<long long>(ones) * L -
                                  static_cast<long long>(a) * static_cast<long long>(b);
            r.abs_err_num = err < 0 ? -err : err;
            rows.push_back(r);
        }
    }
    return rows;
}

ErrorStats exhaustive_mul_error(Design design, int bits, Polarity polarity) {
    if (bits < 1 || bits > 10) throw ConfigError("exhaustive_mul_error bits out of range [1,10]");
    const long long L = 1ll << bits;
    ErrorStats st;
    st.trials = L * L;

    if (polarity == Polarity::Unipolar) {
        if (design == Design::Unary) {
            // unary_multiply is exact for every pair; the error table is 0.
            return st;
        }
        for (const auto& row : mul_sweep(design, bits)) {
            const long long e = row.abs_err_num;
            st.sum_sq_err_num += e * e;
            if (e > st.max_abs_err_num) st.max_abs_err_num = e;
        }
    } else {
        if (design != Design::Htc)
            throw ConfigError("bipolar exhaustive sweep applies to the XNOR multiplier");
        const auto& tabs = stream_tables(bits);
        const size_t W = tabs.words_per_code;
        std::vector<uint64_t> prod(W);
        for (long long a = 0; a < L; ++a) {
            for (long long b = 0; b < L; ++b) {
                const uint64_t* rb = tabs.rb_words(static_cast<uint32_t>(a));
                const uint64_t* tb = tabs.tb_words(static_cast<uint32_t>(b));
                for (size_t w = 0; w < W; ++w) prod[w] = ~(rb[w] ^ tb[w]);
                if (bits < 6) prod[0] &= (uint64_t{1} << L) - 1;
                long long pc = 0;
                for (uint64_t w : prod) pc += __builtin_popcountll(w);
                // decode - exact, as a numerator over 2^(2N)
                const long long e =
                    (2 * pc - L) * L - (2 * a - L) * (2 * b - L);
                const long long ae = e < 0 ? -e : e;
                st.sum_sq_err_num += ae * ae;
                if (ae > st.max_abs_err_num) st.max_abs_err_num = ae;
            }
        }
    }

    const long double L2 = static_cast<long double>(1ll << (2 * bits));
    st.rmse_pct = static_cast<double>(
        100.0L * std::sqrt(static_cast<long double>(st.sum_sq_err_num) / st.trials) / L2);
    st.sde_pct = st.rmse_pct;  // sweep is not a seeded sample; bias split not meaningful
    st.max_abs_err = static_cast<double>(static_cast<long double>(st.max_abs_err_num) / L2);
    return st;
}

long long ActivityReport::total() const {
    long long n = 0;
    for (const auto& [name, t] : per_wire) n += t;
    return n;
}

void ActivityReport::merge(const ActivityReport& other) {
    for (const auto& [name, t] : other.per_wire) per_wire[name] += t;
}

ActivityReport switching_activity(const std::vector<WireTrace>& traces) {
    if (traces.empty()) throw ConfigError("switching_activity needs at least one trace");
    ActivityReport rep;
    for (const auto& tr : traces) rep.per_wire[tr.name] += tr.bits.transitions();
    return rep;
}

std::pair<double, double> image_metrics(const GrayImage& a, const GrayImage& b) {
    if (a.width != b.width || a.height != b.height)
        throw ConfigError("image_metrics dimensions differ");
    if (a.data.empty()) throw ConfigError("image_metrics on empty image");
    long double se = 0.0L;
    for (size_t i = 0; i < a.data.size(); ++i) {
        const long double d = (static_cast<long double>(a.data[i]) - b.data[i]) / 255.0L;
        se += d * d;
    }
    const double rmse = static_cast<double>(std::sqrt(se / a.data.size()));
    if (rmse == 0.0) return {std::numeric_limits<double>::infinity(), 0.0};
    return {20.0 * std::log10(1.0 / rmse), rmse};
}

}  // namespace htcsim
