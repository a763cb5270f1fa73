// Black-box tests of the htc_sim command-line tool. The binary path arrives
// via the HTC_CLI_BIN environment variable (wired up by CTest).

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

int g_failures = 0;
int g_checks = 0;

#define CHECK_MSG(cond, msg)                                                      \
    do {                                                                          \
        ++g_checks;                                                               \
        if (!(cond)) {                                                            \
            ++g_failures;                                                         \
            std::fprintf(stderr, "FAIL %s:%d: %s\n", __FILE__, __LINE__, msg);    \
        }                                                                         \
    } while (0)

#define CHECK_EQ(a, b, msg)                                                       \
    do {                                                                          \
        ++g_checks;                                                               \
        if (!((a) == (b))) {                                                      \
            ++g_failures;                                                         \
            std::ostringstream oss_;                                              \
            oss_ << "FAIL " << __FILE__ << ":" << __LINE__ << ": " << (msg)       \
                 << "\n  left : " << (a) << "\n  right: " << (b) << "\n";         \
            std::fputs(oss_.str().c_str(), stderr);                               \
        }                                                                         \
    } while (0)

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string g_bin;
fs::path g_tmp;

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const fs::path out = g_tmp / "stdout.txt";
    const fs::path err = g_tmp / "stderr.txt";
    std::string cmd = env_prefix.empty() ? "" : env_prefix + " ";
    cmd += "\"" + g_bin + "\" " + args + " > \"" + out.string() + "\" 2> \"" + err.string() + "\"";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = (status == -1) ? -1 : (status & 0x7F) ? 128 : (status >> 8) & 0xFF;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string l;
    while (std::getline(ss, l)) out.push_back(l);
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> f;
    std::istringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) f.push_back(tok);
    return f;
}

void test_mac_bench() {
    const RunResult r = run_cli("mac-bench --design htc --trials 40");
    CHECK_EQ(r.exit_code, 0, "mac-bench exit code");
    CHECK_EQ(r.out,
             std::string("design,bits,fanin,trials,rmse_pct,sde_pct,max_abs_err\n"
                         "htc,8,4,40,5.539013,5.529537,0.62052917\n"),
             "mac-bench htc@40 frozen CSV");

    // byte-identical rerun, and identical under any thread cap
    CHECK_EQ(run_cli("mac-bench --design htc --trials 40").out, r.out, "rerun identical");
    CHECK_EQ(run_cli("mac-bench --design htc --trials 40", "HTC_SIM_THREADS=1").out, r.out,
             "threads=1 identical");
    CHECK_EQ(run_cli("mac-bench --design htc --trials 40 --threads 4").out, r.out,
             "threads=4 identical");

    const RunResult z = run_cli("mac-bench --design cbsc --trials 1 --zero-vectors");
    CHECK_EQ(z.exit_code, 0, "zero-vector bench exit code");
    CHECK_MSG(lines(z.out).size() == 2 &&
                  lines(z.out)[1] == "cbsc,8,4,1,0.000000,0.000000,0.00000000",
              "zero vectors give exactly zero error");

    const RunResult u = run_cli("mac-bench --design unary --trials 25");
    CHECK_EQ(u.exit_code, 0, "unary bench runs");
    CHECK_MSG(lines(u.out).size() == 2 && split_csv(lines(u.out)[1])[0] == "unary",
              "unary bench emits one row");

    const RunResult bad = run_cli("mac-bench --design oracle --trials 1");
    CHECK_MSG(bad.exit_code != 0, "oracle is not a bench design");
}

void test_config_file() {
    const fs::path cfg = g_tmp / "bench.cfg";
    {
        std::ofstream f(cfg);
        f << "# benchmark defaults\n";
        f << "design = cbsc\n";
        f << "trials=60\n";
        f << "lfsr_seed = 0x5A\n";
    }
    const RunResult r = run_cli("mac-bench --config \"" + cfg.string() + "\"");
    CHECK_EQ(r.exit_code, 0, "config-driven run exit code");
    CHECK_MSG(lines(r.out).size() == 2 && lines(r.out)[1].rfind("cbsc,8,4,60,", 0) == 0,
              "config file values applied");

    const RunResult w = run_cli("mac-bench --trials 25 --config \"" + cfg.string() + "\"");
    CHECK_MSG(lines(w.out).size() == 2 && lines(w.out)[1].rfind("cbsc,8,4,25,", 0) == 0,
              "explicit flags win over config values");

    const fs::path bad = g_tmp / "bad.cfg";
    {
        std::ofstream f(bad);
        f << "bogus_key = 1\n";
    }
    const RunResult b = run_cli("mac-bench --config \"" + bad.string() + "\"");
    CHECK_MSG(b.exit_code != 0, "unknown config key rejected");
    CHECK_MSG(b.err.find("unknown config key") != std::string::npos, "diagnostic names the key");

    const RunResult miss = run_cli("mac-bench --config /nonexistent/htc.cfg");
    CHECK_MSG(miss.exit_code != 0, "missing config file rejected");
}

void test_mul_sweep() {
    const RunResult r = run_cli("mul-sweep --bits 1");
    CHECK_EQ(r.exit_code, 0, "mul-sweep exit code");
    CHECK_EQ(r.out,
             std::string("a_code,b_code,product_code,abs_err_num\n"
                         "0,0,0,0\n0,1,0,0\n1,0,0,0\n1,1,1,1\n"),
             "bits=1 truth table");

    const RunResult h = run_cli("mul-sweep --bits 3 --design htc");
    const RunResult c = run_cli("mul-sweep --bits 3 --design cbsc");
    CHECK_EQ(h.out, c.out, "htc and cbsc sweeps byte-identical");
    CHECK_MSG(h.out.find("\n6,5,4,2\n") != std::string::npos,
              "worked example row (6,5) -> product 4, error 2/64");
    CHECK_MSG(lines(h.out).size() == 65, "3-bit sweep emits 4^3 = 64 rows");

    CHECK_MSG(run_cli("mul-sweep --bits 3 --design unary").exit_code != 0,
              "unary has no sweep table");
}

void test_fir() {
    const fs::path out_pgm = g_tmp / "fir_out.pgm";
    const std::string base =
        "fir --design cbsc --synth-width 32 --synth-height 32 --output \"" + out_pgm.string() + "\"";
    const RunResult r = run_cli(base);
    CHECK_EQ(r.exit_code, 0, "fir exit code");
    const auto ls = lines(r.out);
    CHECK_MSG(ls.size() == 2 && ls[0] == "design,width,height,psnr_db,rmse_norm",
              "fir CSV schema");
    CHECK_MSG(ls.size() == 2 && ls[1].rfind("cbsc,32,32,", 0) == 0, "fir CSV row");
    const std::string pgm1 = slurp(out_pgm);
    CHECK_MSG(pgm1.rfind("P5\n", 0) == 0, "fir writes binary PGM");

    // determinism: rerun and thread-cap variations leave every byte unchanged
    const RunResult r2 = run_cli(base, "HTC_SIM_THREADS=4");
    CHECK_EQ(r2.out, r.out, "fir CSV identical under HTC_SIM_THREADS=4");
    CHECK_EQ(slurp(out_pgm), pgm1, "fir PGM identical under HTC_SIM_THREADS=4");

    // round-trip the output image through the fir input path
    const RunResult rt = run_cli("fir --design oracle --input \"" + out_pgm.string() + "\"");
    CHECK_EQ(rt.exit_code, 0, "fir accepts its own PGM output");
    CHECK_MSG(lines(rt.out).size() == 2 && lines(rt.out)[1].rfind("oracle,32,32,", 0) == 0,
              "fir reports the file dimensions");

    CHECK_MSG(run_cli("fir --input /nonexistent/htc.pgm").exit_code != 0,
              "missing input file is an error");
    const RunResult miss = run_cli("fir --input /nonexistent/htc.pgm");
    CHECK_MSG(miss.err.rfind("error:", 0) == 0, "diagnostic goes to stderr");

    // taps are configurable: a 6-code list parses, a 5-code list does not
    CHECK_EQ(run_cli("fir --design oracle --synth-width 16 --synth-height 16 "
                     "--taps 8,40,80,80,40,8").exit_code,
             0, "explicit taps accepted");
    CHECK_MSG(run_cli("fir --design oracle --synth-width 16 --synth-height 16 "
                      "--taps 8,40,80,80,40").exit_code != 0,
              "wrong tap count rejected");
}

void test_dct() {
    const RunResult r = run_cli("dct --design oracle --synth-width 32 --synth-height 32");
    CHECK_EQ(r.exit_code, 0, "dct oracle exit code");
    const auto ls = lines(r.out);
    CHECK_MSG(ls.size() == 2 && ls[0] == "design,width,height,psnr_db,rmse_norm",
              "dct CSV schema");
    const auto fields = split_csv(ls.back());
    CHECK_MSG(fields.size() == 5 && fields[0] == "oracle",
              "dct CSV row starts with the design");
    const double psnr = std::strtod(fields[3].c_str(), nullptr);
    CHECK_MSG(psnr >= 40.0 || fields[3] == "inf", "oracle round trip is quantization-limited");

    const RunResult h = run_cli("dct --design htc --synth-width 64 --synth-height 64");
    CHECK_EQ(h.exit_code, 0, "dct htc exit code");
    CHECK_EQ(run_cli("dct --design htc --synth-width 64 --synth-height 64").out, h.out,
             "dct deterministic across reruns");

    CHECK_MSG(run_cli("dct --design unary").exit_code != 0, "unary DCT rejected");
}

void test_activity() {
    const RunResult r = run_cli("activity --trials 50");
    CHECK_EQ(r.exit_code, 0, "activity exit code");
    const auto ls = lines(r.out);
    CHECK_MSG(!ls.empty() && ls[0] == "wire,total_transitions,max_per_epoch,evals",
              "activity CSV schema");
    std::map<std::string, long long> totals, max_epoch;
    for (size_t i = 1; i < ls.size(); ++i) {
        const auto f = split_csv(ls[i]);
        CHECK_MSG(f.size() == 4, "activity row has 4 fields");
        if (f.size() != 4) continue;
        totals[f[0]] = std::strtoll(f[1].c_str(), nullptr, 10);
        max_epoch[f[0]] = std::strtoll(f[2].c_str(), nullptr, 10);
        CHECK_EQ(std::strtoll(f[3].c_str(), nullptr, 10), 50ll, "evals column");
    }
    CHECK_MSG(totals.count("out_tb") && totals.count("mux"), "out_tb and mux wires reported");
    CHECK_MSG(max_epoch["out_tb"] <= 2, "TB output stays within 2 transitions per epoch");
    CHECK_MSG(totals["out_tb"] < totals["mux"], "TB propagation beats the GB MUX wire");
    CHECK_EQ(run_cli("activity --trials 50").out, r.out, "activity deterministic");
}

void test_misc() {
    CHECK_MSG(run_cli("").exit_code != 0, "a subcommand is required");
    CHECK_EQ(run_cli("--help").exit_code, 0, "--help exits 0");
    for (const char* sub : {"mac-bench", "mul-sweep", "fir", "dct", "activity"}) {
        const RunResult h = run_cli(std::string(sub) + " --help");
        CHECK_EQ(h.exit_code, 0, "subcommand --help exits 0");
        CHECK_MSG(h.out.find("--") != std::string::npos, "help lists flags");
    }
    CHECK_MSG(run_cli("mac-bench --design warp9").exit_code != 0, "unknown design rejected");
    CHECK_MSG(run_cli("frobnicate").exit_code != 0, "unknown subcommand rejected");
}

}  // namespace

int main() {
    const char* bin = std::getenv("HTC_CLI_BIN");
    if (!bin || !*bin) {
        std::fprintf(stderr, "HTC_CLI_BIN not set; cannot locate the htc_sim binary\n");
        return 2;
    }
    g_bin = bin;
    g_tmp = fs::temp_directory_path() / "htcsim_cli_tests";
    fs::create_directories(g_tmp);

    test_mac_bench();
    test_config_file();
    test_mul_sweep();
    test_fir();
    test_dct();
    test_activity();
    test_misc();

    std::error_code ec;
    fs::remove_all(g_tmp, ec);

    if (g_failures == 0) {
        std::printf("cli tests: %d checks passed\n", g_checks);
        return 0;
    }
    std::fprintf(stderr, "cli tests: %d of %d checks failed\n", g_failures, g_checks);
    return 1;
}
