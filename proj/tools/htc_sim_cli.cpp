// htc_sim — benchmarks and image pipelines for the HTC/CBSC/Unary designs.
//
// Subcommands: mac-bench, mul-sweep, fir, dct, activity. Every run is fully
// determined by its RunConfig: flags, an optional key=value config file
// (flags win), and HTC_SIM_THREADS as the parallelism cap.

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "htcsim/apps.hpp"
#include "htcsim/config.hpp"
#include "htcsim/mac.hpp"
#include "htcsim/rng.hpp"

namespace {

using namespace htcsim;

// Extra per-subcommand knobs that live outside RunConfig.
struct Extras {
    std::vector<uint32_t> fir_taps;
    bool rows_only = false;
    std::string config_path;
};

void add_common(CLI::App* cmd, RunConfig& rc, Extras& ex,
                const std::vector<std::string>& designs) {
    cmd->add_option("--design", rc.design, "Arithmetic design")
        ->check(CLI::IsMember(designs))
        ->capture_default_str();
    cmd->add_option("--bits", rc.bits, "Operand width N")->capture_default_str();
    cmd->add_option("--fanin", rc.fan_in, "MAC fan-in K")->capture_default_str();
    cmd->add_option("--polarity", rc.polarity, "unipolar|bipolar")
        ->check(CLI::IsMember({"unipolar", "bipolar"}))
        ->capture_default_str();
    cmd->add_option("--trials", rc.trials, "Random trials")->capture_default_str();
    cmd->add_option("--seed", rc.seed, "Operand-draw seed")->capture_default_str();
    cmd->add_option("--lfsr-width", rc.lfsr_width, "Selector LFSR width")->capture_default_str();
    cmd->add_option("--lfsr-taps", rc.lfsr_taps, "Selector LFSR taps (1-indexed)")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--lfsr-seed", rc.lfsr_seed, "Selector base state")->capture_default_str();
    cmd->add_option("--lfsr-divider", rc.lfsr_divider, "Selector clock divider")
        ->capture_default_str();
    cmd->add_option("--threads", rc.threads, "Worker threads (0 = auto)")->capture_default_str();
    cmd->add_option("--config", ex.config_path, "key=value config file (flags win)");
}

// ---- key=value config files ------------------------------------------------
// Flat `key=value` lines, '#' comments; a key is applied only when its flag
// was not given on the command line, and only keys that name an option of
// the invoked subcommand are legal.

const std::map<std::string, std::string>& key_to_flag() {
    static const std::map<std::string, std::string> m = {
        {"design", "--design"},
        {"bits", "--bits"},
        {"fanin", "--fanin"},
        {"polarity", "--polarity"},
        {"trials", "--trials"},
        {"seed", "--seed"},
        {"lfsr_width", "--lfsr-width"},
        {"lfsr_taps", "--lfsr-taps"},
        {"lfsr_seed", "--lfsr-seed"},
        {"lfsr_divider", "--lfsr-divider"},
        {"threads", "--threads"},
        {"input", "--input"},
        {"output", "--output"},
        {"synth_width", "--synth-width"},
        {"synth_height", "--synth-height"},
        {"zero_vectors", "--zero-vectors"},
        {"taps", "--taps"},
        {"rows_only", "--rows-only"},
    };
    return m;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

long long to_ll(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const long long r = std::stoll(v, &pos, 0);
        if (pos != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': invalid integer '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw ConfigError("config key '" + key + "': invalid boolean '" + v + "'");
}

template <typename T>
std::vector<T> to_list(const std::string& key, const std::string& v) {
    std::vector<T> out;
    std::string item;
    std::istringstream is(v);
    while (std::getline(is, item, ','))
        out.push_back(static_cast<T>(to_ll(key, trim(item))));
    return out;
}

void apply_config_file(CLI::App* cmd, RunConfig& rc, Extras& ex) {
    std::ifstream f(ex.config_path);
    if (!f) throw ConfigError("cannot open config file: " + ex.config_path);
    std::string line;
    int ln = 0;
    while (std::getline(f, line)) {
        ++ln;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(ex.config_path + ":" + std::to_string(ln) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        const auto it = key_to_flag().find(key);
        const CLI::Option* opt =
            it == key_to_flag().end() ? nullptr : cmd->get_option_no_throw(it->second);
        if (opt == nullptr)
            throw ConfigError(ex.config_path + ":" + std::to_string(ln) + ": unknown config key '" +
                              key + "'");
        if (opt->count() > 0) continue;  // the flag was given; flags win

        if (key == "design") rc.design = val;
        else if (key == "bits") rc.bits = static_cast<int>(to_ll(key, val));
        else if (key == "fanin") rc.fan_in = static_cast<int>(to_ll(key, val));
        else if (key == "polarity") rc.polarity = val;
        else if (key == "trials") rc.trials = to_ll(key, val);
        else if (key == "seed") rc.seed = static_cast<uint64_t>(to_ll(key, val));
        else if (key == "lfsr_width") rc.lfsr_width = static_cast<int>(to_ll(key, val));
        else if (key == "lfsr_taps") rc.lfsr_taps = to_list<int>(key, val);
        else if (key == "lfsr_seed") rc.lfsr_seed = static_cast<uint32_t>(to_ll(key, val));
        else if (key == "lfsr_divider") rc.lfsr_divider = static_cast<int>(to_ll(key, val));
        else if (key == "threads") rc.threads = static_cast<int>(to_ll(key, val));
        else if (key == "input") rc.input = val;
        else if (key == "output") rc.output = val;
        else if (key == "synth_width") rc.synth_width = static_cast<int>(to_ll(key, val));
        else if (key == "synth_height") rc.synth_height = static_cast<int>(to_ll(key, val));
        else if (key == "zero_vectors") rc.zero_vectors = to_bool(key, val);
        else if (key == "taps") ex.fir_taps = to_list<uint32_t>(key, val);
        else if (key == "rows_only") ex.rows_only = to_bool(key, val);
    }
}

// ---- subcommands -------------------------------------------------------

GrayImage load_input(const RunConfig& rc) {
    if (!rc.input.empty()) return pgm_read(rc.input);
    return synth_image(rc.synth_width, rc.synth_height);
}

int cmd_mac_bench(const RunConfig& rc) {
    const ErrorStats st = mac_error_bench(rc.design_enum(), rc.bench());
    std::printf("design,bits,fanin,trials,rmse_pct,sde_pct,max_abs_err\n");
    std::printf("%s,%d,%d,%lld,%.6f,%.6f,%.8f\n", rc.design.c_str(), rc.bits, rc.fan_in,
                st.trials, st.rmse_pct, st.sde_pct, st.max_abs_err);
    return 0;
}

int cmd_mul_sweep(const RunConfig& rc) {
    const auto rows = mul_sweep(rc.design_enum(), rc.bits);
    std::printf("a_code,b_code,product_code,abs_err_num\n");
    for (const auto& r : rows)
        std::printf("%u,%u,%u,%lld\n", r.a_code, r.b_code, r.product_code, r.abs_err_num);
    return 0;
}

int cmd_fir(const RunConfig& rc, const Extras& ex) {
    const GrayImage img = load_input(rc);
    FirSpec spec = rc.fir();
    spec.rows_only = ex.rows_only;
    if (!ex.fir_taps.empty()) {
        if (ex.fir_taps.size() != 6) throw ConfigError("--taps wants exactly 6 codes");
        for (int j = 0; j < 6; ++j) spec.tap_codes[j] = ex.fir_taps[j];
        spec.tap_codes[6] = spec.tap_codes[7] = 0;
    }
    const GrayImage out = fir_apply(img, spec);
    if (!rc.output.empty()) pgm_write(out, rc.output);
    const auto [psnr, rmse] = image_metrics(img, out);
    std::printf("design,width,height,psnr_db,rmse_norm\n");
    std::printf("%s,%d,%d,%.6f,%.8f\n", rc.design.c_str(), img.width, img.height, psnr, rmse);
    return 0;
}

int cmd_dct(const RunConfig& rc) {
    const GrayImage img = load_input(rc);
    const DctResult res = dct_roundtrip(img, rc.dct());
    if (!rc.output.empty()) pgm_write(res.image, rc.output);
    std::printf("design,width,height,psnr_db,rmse_norm\n");
    std::printf("%s,%d,%d,%.6f,%.8f\n", rc.design.c_str(), img.width, img.height, res.psnr_db,
                res.rmse_norm);
    return 0;
}

int cmd_activity(const RunConfig& rc) {
    const BenchConfig bc = rc.bench();
    if (bc.trials < 1) throw ConfigError("activity needs trials >= 1");
    const uint32_t cmask = (1u << bc.bits) - 1;
    ActivityReport totals;
    std::map<std::string, long long> max_per_epoch;
    std::vector<FixedPoint> b(bc.fan_in, FixedPoint{bc.bits, 0, bc.polarity});
    std::vector<FixedPoint> c = b;
    for (long long t = 0; t < bc.trials; ++t) {
        SplitMix64 g = trial_stream(bc.seed, static_cast<uint64_t>(t));
        for (auto& v : b) v.code = g.next() & cmask;
        for (auto& v : c) v.code = g.next() & cmask;
        MacConfig mc{bc.bits, bc.fan_in, bc.polarity,
                     LfsrState{bc.lfsr_width, bc.lfsr_taps,
                               derive_lfsr_state(bc.lfsr_width, bc.lfsr_seed,
                                                 static_cast<uint64_t>(t)),
                               bc.lfsr_divider},
                     1};
        const MacResult res = htc_mac(b, c, mc, /*with_trace=*/true);
        const ActivityReport rep = switching_activity(res.trace);
        totals.merge(rep);
        for (const auto& [wire, n] : rep.per_wire) {
            auto& m = max_per_epoch[wire];
            if (n > m) m = n;
        }
    }
    std::printf("wire,total_transitions,max_per_epoch,evals\n");
    for (const auto& [wire, n] : totals.per_wire)
        std::printf("%s,%lld,%lld,%lld\n", wire.c_str(), n, max_per_epoch[wire], bc.trials);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HTC bitstream arithmetic simulator and benchmark harness"};
    app.require_subcommand(1);

    RunConfig rc_bench, rc_sweep, rc_fir, rc_dct, rc_act;
    Extras ex_bench, ex_sweep, ex_fir, ex_dct, ex_act;

    CLI::App* sb = app.add_subcommand("mac-bench", "MAC error benchmark (RMSE/SDE CSV)");
    add_common(sb, rc_bench, ex_bench, {"htc", "cbsc", "unary"});
    sb->add_flag("--zero-vectors", rc_bench.zero_vectors, "Draw all-zero operand vectors");

    CLI::App* sw = app.add_subcommand("mul-sweep", "Exhaustive multiplier error table (CSV)");
    add_common(sw, rc_sweep, ex_sweep, {"htc", "cbsc"});

    CLI::App* sf = app.add_subcommand("fir", "Separable 6-tap FIR blur on a grayscale image");
    add_common(sf, rc_fir, ex_fir, {"htc", "cbsc", "unary", "oracle"});
    sf->add_option("--input", rc_fir.input, "Input PGM (default: synthetic image)");
    sf->add_option("--output", rc_fir.output, "Output PGM path");
    sf->add_option("--synth-width", rc_fir.synth_width)->capture_default_str();
    sf->add_option("--synth-height", rc_fir.synth_height)->capture_default_str();
    sf->add_option("--taps", ex_fir.fir_taps, "Six 8-bit tap codes")->delimiter(',');
    sf->add_flag("--rows-only", ex_fir.rows_only, "Apply the row pass only");

    CLI::App* sd = app.add_subcommand("dct", "8x8 block DCT/IDCT round trip");
    add_common(sd, rc_dct, ex_dct, {"htc", "cbsc", "oracle"});
    sd->add_option("--input", rc_dct.input, "Input PGM (default: synthetic image)");
    sd->add_option("--output", rc_dct.output, "Output PGM path");
    sd->add_option("--synth-width", rc_dct.synth_width)->capture_default_str();
    sd->add_option("--synth-height", rc_dct.synth_height)->capture_default_str();

    CLI::App* sa = app.add_subcommand("activity", "Per-wire switching-transition totals");
    add_common(sa, rc_act, ex_act, {"htc"});

    CLI11_PARSE(app, argc, argv);

    try {
        if (sb->parsed()) {
            if (!ex_bench.config_path.empty()) apply_config_file(sb, rc_bench, ex_bench);
            return cmd_mac_bench(rc_bench);
        }
        if (sw->parsed()) {
            if (!ex_sweep.config_path.empty()) apply_config_file(sw, rc_sweep, ex_sweep);
            return cmd_mul_sweep(rc_sweep);
        }
        if (sf->parsed()) {
            if (!ex_fir.config_path.empty()) apply_config_file(sf, rc_fir, ex_fir);
            return cmd_fir(rc_fir, ex_fir);
        }
        if (sd->parsed()) {
            if (!ex_dct.config_path.empty()) apply_config_file(sd, rc_dct, ex_dct);
            return cmd_dct(rc_dct);
        }
        if (sa->parsed()) {
            if (!ex_act.config_path.empty()) apply_config_file(sa, rc_act, ex_act);
            return cmd_activity(rc_act);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
