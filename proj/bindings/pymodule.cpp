// Python bindings for the htcsim core: encodings, the HTC/CBSC/Unary
// arithmetic units, the benchmark harness and the two image accelerators.
// Images cross the boundary as HxW uint8 numpy arrays.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "htcsim/apps.hpp"
#include "htcsim/baselines.hpp"
#include "htcsim/encodings.hpp"
#include "htcsim/lfsr.hpp"
#include "htcsim/mac.hpp"
#include "htcsim/metrics.hpp"

namespace py = pybind11;
using namespace htcsim;

namespace {

Polarity pol(bool bipolar) { return bipolar ? Polarity::Bipolar : Polarity::Unipolar; }

FixedPoint fp(int bits, uint32_t code, bool bipolar) {
    FixedPoint x{bits, code, pol(bipolar)};
    x.check();
    return x;
}

std::vector<FixedPoint> fp_vec(const std::vector<uint32_t>& codes, int bits, bool bipolar) {
    std::vector<FixedPoint> v;
    v.reserve(codes.size());
    for (uint32_t c : codes) v.push_back(fp(bits, c, bipolar));
    return v;
}

std::vector<int> to_bits(const Bitstream& bs) {
    std::vector<int> out(bs.size());
    for (size_t t = 0; t < bs.size(); ++t) out[t] = bs.bit(t) ? 1 : 0;
    return out;
}

Bitstream from_bits(const std::vector<int>& bits, bool bipolar) {
    Bitstream bs(bits.size(), StreamFormat::GB, pol(bipolar));
    for (size_t t = 0; t < bits.size(); ++t)
        if (bits[t]) bs.set_bit(t, true);
    return bs;
}

Selector make_selector(const std::string& kind, uint32_t lfsr_seed, int lfsr_divider,
                       int dwell, int phase) {
    if (kind == "lfsr") return LfsrState{8, {8, 6, 5, 4}, lfsr_seed, lfsr_divider};
    if (kind == "roundrobin") return RoundRobin{dwell, phase};
    throw ConfigError("selector must be 'lfsr' or 'roundrobin'");
}

py::array_t<uint8_t> image_to_array(const GrayImage& img) {
    py::array_t<uint8_t> arr({img.height, img.width});
    std::copy(img.data.begin(), img.data.end(), arr.mutable_data());
    return arr;
}

GrayImage array_to_image(const py::array_t<uint8_t, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 2) throw ConfigError("image array must be 2-D (H, W)");
    GrayImage img(static_cast<int>(arr.shape(1)), static_cast<int>(arr.shape(0)));
    std::copy(arr.data(), arr.data() + arr.size(), img.data.begin());
    return img;
}

py::dict stats_to_dict(const ErrorStats& st) {
    py::dict d;
    d["rmse_pct"] = st.rmse_pct;
    d["sde_pct"] = st.sde_pct;
    d["max_abs_err"] = st.max_abs_err;
    d["trials"] = st.trials;
    d["sum_err_num"] = st.sum_err_num;
    d["sum_sq_err_num"] = st.sum_sq_err_num;
    d["max_abs_err_num"] = st.max_abs_err_num;
    return d;
}

}  // namespace

PYBIND11_MODULE(_htcsim, m) {
    m.doc() = "Bit-accurate simulator for hybrid temporal-computing arithmetic";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<PgmError>(m, "PgmError", PyExc_IOError);

    // --- encodings ---------------------------------------------------------
    m.def(
        "encode_tb",
        [](uint32_t code, int bits, bool bipolar) { return to_bits(encode_tb(fp(bits, code, bipolar))); },
        py::arg("code"), py::arg("bits") = 8, py::arg("bipolar") = false,
        "Temporal (prefix-ones) bitstream of a code.");
    m.def(
        "encode_rb",
        [](uint32_t code, int bits, bool bipolar) { return to_bits(encode_rb(fp(bits, code, bipolar))); },
        py::arg("code"), py::arg("bits") = 8, py::arg("bipolar") = false,
        "Regulated (low-discrepancy) bitstream of a code.");
    m.def(
        "decode",
        [](const std::vector<int>& bits, bool bipolar) { return decode(from_bits(bits, bipolar)); },
        py::arg("bits"), py::arg("bipolar") = false, "Ones-density decode of a bitstream.");
    m.def(
        "gb_to_tb",
        [](const std::vector<int>& bits) { return to_bits(gb_to_tb(from_bits(bits, false))); },
        py::arg("bits"), "Compact any bitstream into the TB stream of equal popcount.");
    m.def(
        "signed_to_offset",
        [](int32_t s, int bits) { return signed_to_offset(s, bits).code; },
        py::arg("s"), py::arg("bits") = 8, "Two's-complement code -> bipolar offset code.");

    // --- LFSR ---------------------------------------------------------------
    m.def(
        "lfsr_next",
        [](uint32_t state, int width, const std::vector<int>& taps, int divider) {
            auto [out, nxt] = lfsr_next(LfsrState{width, taps, state, divider});
            return py::make_tuple(out, nxt.state);
        },
        py::arg("state"), py::arg("width") = 8,
        py::arg("taps") = std::vector<int>{8, 6, 5, 4}, py::arg("divider") = 1,
        "One Fibonacci LFSR shift: returns (output_bit, next_state).");

    // --- HTC arithmetic ------------------------------------------------------
    m.def(
        "htc_multiply",
        [](uint32_t a, uint32_t b, int bits, bool bipolar) {
            return to_bits(htc_multiply(fp(bits, a, bipolar), fp(bits, b, bipolar), pol(bipolar)));
        },
        py::arg("a"), py::arg("b"), py::arg("bits") = 8, py::arg("bipolar") = false,
        "Single-gate product stream: AND (unipolar) / XNOR (bipolar) of RB(a) and TB(b).");
    m.def(
        "htc_mac",
        [](const std::vector<uint32_t>& b, const std::vector<uint32_t>& c, int bits, bool bipolar,
           const std::string& selector, uint32_t lfsr_seed, int lfsr_divider, int dwell, int phase,
           int epochs) {
            MacConfig cfg{bits, static_cast<int>(b.size()), pol(bipolar),
                          make_selector(selector, lfsr_seed, lfsr_divider, dwell, phase), epochs};
            const MacResult r = htc_mac(fp_vec(b, bits, bipolar), fp_vec(c, bits, bipolar), cfg);
            py::dict d;
            d["binary_sum"] = r.binary_sum;
            d["pc_total"] = r.pc_total;
            d["out_tb_len"] = r.out_tb.size();
            return d;
        },
        py::arg("b"), py::arg("c"), py::arg("bits") = 8, py::arg("bipolar") = false,
        py::arg("selector") = "lfsr", py::arg("lfsr_seed") = 0x5A, py::arg("lfsr_divider") = 12,
        py::arg("dwell") = 4, py::arg("phase") = 0, py::arg("epochs") = 1,
        "K-input HTC MAC; returns the accumulator readout and MUX popcount.");

    // --- baselines ------------------------------------------------------------
    m.def(
        "cbsc_multiply",
        [](uint32_t w, uint32_t x, int bits) {
            return cbsc_multiply(fp(bits, w, false), fp(bits, x, false)).code;
        },
        py::arg("w"), py::arg("x"), py::arg("bits") = 8,
        "Counting-based product code: ones of RB(x) in a w-cycle window.");
    m.def(
        "cbsc_mac",
        [](const std::vector<uint32_t>& b, const std::vector<uint32_t>& c, int bits, bool bipolar) {
            return cbsc_mac(fp_vec(b, bits, bipolar), fp_vec(c, bits, bipolar), pol(bipolar));
        },
        py::arg("b"), py::arg("c"), py::arg("bits") = 8, py::arg("bipolar") = false,
        "Exact binary sum of counting products.");
    m.def(
        "unary_mac",
        [](const std::vector<uint32_t>& b, const std::vector<uint32_t>& c, int bits, size_t n) {
            const auto r = unary_mac(fp_vec(b, bits, false), fp_vec(c, bits, false),
                                     n ? n : (size_t{1} << bits));
            py::dict d;
            d["value"] = r.value;
            d["ones"] = r.ones;
            d["stream_len"] = r.stream_len;
            d["latency_cycles"] = r.latency_cycles;
            return d;
        },
        py::arg("b"), py::arg("c"), py::arg("bits") = 8, py::arg("n") = 0,
        "PWM MAC: repeat-multiply then delayed-OR; n defaults to 2^bits.");
    m.def("unary_accuracy_bound", &unary_accuracy_bound, py::arg("n"), py::arg("summands"),
          "Largest per-stream ones count for which delayed OR summation can stay exact.");

    // --- metrics ---------------------------------------------------------------
    m.def(
        "mac_error_bench",
        [](const std::string& design, int bits, int fan_in, long long trials, uint64_t seed,
           uint32_t lfsr_seed, int lfsr_divider, int threads, bool zero_vectors) {
            BenchConfig cfg;
            cfg.bits = bits;
            cfg.fan_in = fan_in;
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.lfsr_seed = lfsr_seed;
            cfg.lfsr_divider = lfsr_divider;
            cfg.threads = threads;
            cfg.zero_vectors = zero_vectors;
            return stats_to_dict(mac_error_bench(design_from_string(design), cfg));
        },
        py::arg("design") = "htc", py::arg("bits") = 8, py::arg("fan_in") = 4,
        py::arg("trials") = 100000, py::arg("seed") = 42, py::arg("lfsr_seed") = 0x5A,
        py::arg("lfsr_divider") = 12, py::arg("threads") = 0, py::arg("zero_vectors") = false,
        "Seeded random-vector MAC accuracy benchmark (RMSE/SDE in % of full scale).");
    m.def(
        "exhaustive_mul_error",
        [](const std::string& design, int bits, bool bipolar) {
            return stats_to_dict(exhaustive_mul_error(design_from_string(design), bits, pol(bipolar)));
        },
        py::arg("design") = "htc", py::arg("bits") = 8, py::arg("bipolar") = false,
        "Error statistics over every (a, b) code pair.");
    m.def(
        "mul_sweep",
        [](const std::string& design, int bits) {
            py::list rows;
            for (const auto& r : mul_sweep(design_from_string(design), bits))
                rows.append(py::make_tuple(r.a_code, r.b_code, r.product_code, r.abs_err_num));
            return rows;
        },
        py::arg("design") = "htc", py::arg("bits") = 8,
        "Rows (a_code, b_code, product_code, abs_err_num) in a-major order.");
    m.def(
        "image_metrics",
        [](const py::array_t<uint8_t, py::array::c_style | py::array::forcecast>& a,
           const py::array_t<uint8_t, py::array::c_style | py::array::forcecast>& b) {
            const auto [psnr, rmse] = image_metrics(array_to_image(a), array_to_image(b));
            return py::make_tuple(psnr, rmse);
        },
        py::arg("a"), py::arg("b"), "(psnr_db, rmse) with pixels normalised to [0,1].");

    // --- images and accelerators ------------------------------------------------
    m.def(
        "synth_image",
        [](int width, int height) { return image_to_array(synth_image(width, height)); },
        py::arg("width") = 256, py::arg("height") = 256,
        "Deterministic natural-like grayscale test image.");
    m.def(
        "pgm_read", [](const std::string& path) { return image_to_array(pgm_read(path)); },
        py::arg("path"), "Read a P2/P5 PGM file into an HxW uint8 array.");
    m.def(
        "pgm_write",
        [](const py::array_t<uint8_t, py::array::c_style | py::array::forcecast>& img,
           const std::string& path) { pgm_write(array_to_image(img), path); },
        py::arg("image"), py::arg("path"), "Write an HxW uint8 array as binary PGM (P5).");
    m.def("gaussian6_tap_codes", []() {
        const auto codes = gaussian6_tap_codes();
        return std::vector<uint32_t>(codes.begin(), codes.begin() + 6);
    },
          "The six 8-bit FIR tap codes of the binomial blur kernel.");
    m.def(
        "fir_apply",
        [](const py::array_t<uint8_t, py::array::c_style | py::array::forcecast>& img,
           const std::string& design, const std::vector<uint32_t>& taps, bool rows_only,
           int threads, uint64_t selector_seed) {
            FirSpec spec;
            spec.design = design_from_string(design);
            if (!taps.empty()) {
                if (taps.size() != 6) throw ConfigError("taps wants exactly 6 codes");
                for (size_t i = 0; i < 6; ++i) spec.tap_codes[i] = taps[i];
            }
            spec.rows_only = rows_only;
            spec.threads = threads;
            spec.selector_seed = selector_seed;
            return image_to_array(fir_apply(array_to_image(img), spec));
        },
        py::arg("image"), py::arg("design") = "htc", py::arg("taps") = std::vector<uint32_t>{},
        py::arg("rows_only") = false, py::arg("threads") = 0, py::arg("selector_seed") = 0x5A,
        "Separable 6-tap blur through the selected MAC design.");
    m.def(
        "dct_roundtrip",
        [](const py::array_t<uint8_t, py::array::c_style | py::array::forcecast>& img,
           const std::string& design, int threads, uint64_t selector_seed) {
            DctSpec spec;
            spec.design = design_from_string(design);
            spec.threads = threads;
            spec.selector_seed = selector_seed;
            const DctResult r = dct_roundtrip(array_to_image(img), spec);
            return py::make_tuple(image_to_array(r.image), r.psnr_db, r.rmse_norm);
        },
        py::arg("image"), py::arg("design") = "htc", py::arg("threads") = 0,
        py::arg("selector_seed") = 0x5A,
        "8x8 block DCT + IDCT round trip; returns (image, psnr_db, rmse_norm).");
}
