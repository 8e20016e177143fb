// End-to-end CLI checks through a subprocess; the binary path arrives via
// the MULTAB_CLI environment variable set by CTest.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

std::string cli_path() {
    const char* p = std::getenv("MULTAB_CLI");
    EXPECT_NE(p, nullptr) << "MULTAB_CLI must point at the CLI binary";
    return p ? p : "";
}

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd = env_prefix + "'" + cli_path() + "' " + args + " 2>&1";
    CliResult res;
    std::FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return res;
    std::array<char, 4096> buf;
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) res.out.append(buf.data(), got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string read_file(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

TEST(Cli, ExactDirect) {
    const CliResult r = run_cli("exact --n 4 --algorithm direct");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out, "9\n");
}

TEST(Cli, ExactAlgorithmsAgree) {
    for (const char* alg : {"direct", "incremental", "subquadratic"}) {
        const CliResult r = run_cli(std::string("exact --n 1000 --algorithm ") + alg);
        EXPECT_EQ(r.exit_code, 0) << alg;
        EXPECT_EQ(r.out, "248083\n") << alg;
    }
}

TEST(Cli, TabulateStdout) {
    const CliResult r = run_cli("tabulate --n 10 --out -");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out, "k,delta,M\n1,0,1\n2,0,3\n3,0,6\n4,1,9\n5,0,14\n6,2,18\n7,0,25\n8,3,30\n9,3,36\n10,4,42\n");
}

TEST(Cli, DeltaWithAndWithoutWheel) {
    EXPECT_EQ(run_cli("delta --n 75").out, "41\n");
    EXPECT_EQ(run_cli("delta --n 75 --wheel 2").out, "41\n");
    EXPECT_EQ(run_cli("delta --n 7").out, "0\n");
}

TEST(Cli, EstimateReportSchema) {
    const CliResult r =
        run_cli("estimate --n-exponent 10 --method product --trials 2000 --seed 7 --threads 2");
    ASSERT_EQ(r.exit_code, 0) << r.out;
    EXPECT_EQ(r.out.rfind("n_exponent: 10\nmethod: product\ntrials: 2000\nestimate: ", 0), 0u)
        << r.out;
    EXPECT_NE(r.out.find("\nsampler: bach\n"), std::string::npos);
    // deterministic under the same seed and thread count
    const CliResult again =
        run_cli("estimate --n-exponent 10 --method product --trials 2000 --seed 7 --threads 2");
    const auto strip_wall = [](std::string s) { return s.substr(0, s.find("wall_time_seconds")); };
    EXPECT_EQ(strip_wall(r.out), strip_wall(again.out));
}

TEST(Cli, ReportFromTabulation) {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "multab_cli_report";
    fs::create_directories(dir);
    const std::string csv = (dir / "t.csv").string();
    ASSERT_EQ(run_cli("tabulate --n 50 --out '" + csv + "'").exit_code, 0);
    const CliResult r = run_cli("report --input '" + csv + "' --normalized");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out.rfind("k,M_over_k2,normalized\n", 0), 0u);
    EXPECT_NE(r.out.find("\n50,"), std::string::npos);
    // stable output across invocations
    EXPECT_EQ(run_cli("report --input '" + csv + "' --normalized").out, r.out);
    fs::remove_all(dir);
}

TEST(Cli, ShapeSvg) {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "multab_cli_shape";
    fs::create_directories(dir);
    const std::string svg = (dir / "s.svg").string();
    ASSERT_EQ(run_cli("shape --n 42 --wheel 1 --out '" + svg + "'").exit_code, 0);
    const std::string content = read_file(svg);
    EXPECT_NE(content.find("<svg"), std::string::npos);
    EXPECT_NE(content.find("n=42 w=1"), std::string::npos);
    fs::remove_all(dir);
}

TEST(Cli, UsageErrors) {
    EXPECT_NE(run_cli("exact").exit_code, 0);                        // missing --n
    EXPECT_NE(run_cli("exact --n 4 --algorithm sieve").exit_code, 0);
    EXPECT_NE(run_cli("nonsense").exit_code, 0);
    EXPECT_EQ(run_cli("tabulate --n 10 --out - --checkpoint /tmp/x.ckpt").exit_code, 2);
}

TEST(Cli, AbortHookAndResume) {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "multab_cli_resume";
    fs::create_directories(dir);
    const std::string out = (dir / "t.csv").string();
    const std::string ckpt = (dir / "t.ckpt").string();
    const std::string straight = (dir / "straight.csv").string();

    ASSERT_EQ(run_cli("tabulate --n 4000 --out '" + straight + "'").exit_code, 0);

    const std::string args = "tabulate --n 4000 --checkpoint-every 256 --out '" + out +
                             "' --checkpoint '" + ckpt + "'";
    EXPECT_EQ(run_cli(args, "MULTAB_TEST_ABORT_AFTER_K=1000 ").exit_code, 17);
    EXPECT_EQ(run_cli(args).exit_code, 0);
    EXPECT_EQ(read_file(out), read_file(straight));
    fs::remove_all(dir);
}

}  // namespace
