#include "multab/tabulate.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "multab/direct.hpp"
#include "multab/runner.hpp"
#include "support/oracles.hpp"

namespace multab {
namespace {

TEST(TabulateM, FirstTenValues) {
    const auto r = tabulate_m(10);
    const std::vector<std::uint64_t> want = {1, 3, 6, 9, 14, 18, 25, 30, 36, 42};
    for (std::uint64_t k = 1; k <= 10; ++k) EXPECT_EQ(r.m_values[k], want[k - 1]) << k;
    EXPECT_EQ(r.deltas[6], 2u);
    EXPECT_EQ(r.deltas[7], 0u);
    EXPECT_EQ(r.deltas[1], 0u);  // forced by M(1) = 1
}

TEST(TabulateM, MatchesBruteForceTo2000) {
    const auto r = tabulate_m(2000, 0, 2);
    const auto brute = testing::brute_tabulate(2000);
    for (std::uint64_t k = 1; k <= 2000; ++k) {
        ASSERT_EQ(r.m_values[k], brute.m[k]) << k;
        ASSERT_EQ(r.deltas[k], brute.delta[k]) << k;
    }
}

TEST(TabulateM, Eq4IdentityHolds) {
    const auto r = tabulate_m(5000, 6, 2);
    std::uint64_t delta_sum = 0;
    for (std::uint64_t k = 1; k <= 5000; ++k) {
        delta_sum += r.deltas[k];
        ASSERT_EQ(r.m_values[k], (k * k + k) / 2 - delta_sum) << k;
        if (k > 1)
            ASSERT_EQ(r.m_values[k], r.m_values[k - 1] + k - r.deltas[k]) << k;
    }
}

TEST(TabulateM, WheelAndWorkerCountsDontChangeOutput) {
    const auto base = tabulate_m(3000, 0, 1);
    for (std::uint32_t w : {1u, 2u, 6u, 12u, 60u}) {
        const auto r = tabulate_m(3000, w, 2);
        ASSERT_EQ(r.m_values, base.m_values) << "w=" << w;
    }
    const auto r3 = tabulate_m(3000, 60, 3);
    EXPECT_EQ(r3.m_values, base.m_values);
}

TEST(TabulateM, DeltaIdentitiesForPrimeMultiples) {
    const std::uint64_t n_max = 10000;
    const auto r = tabulate_m(n_max, 0, 2);
    const auto is_prime = testing::sieve_primes(n_max);
    for (std::uint64_t p = 2; p <= n_max; ++p) {
        if (!is_prime[p]) continue;
        EXPECT_EQ(r.deltas[p], 0u) << "p=" << p;
        if (2 * p <= n_max) EXPECT_EQ(r.deltas[2 * p], p - 1) << "p=" << p;
        if (p > 3 && 3 * p <= n_max)
            EXPECT_EQ(r.deltas[3 * p], (p - 1) + (p - 1) / 2) << "p=" << p;
    }
    EXPECT_EQ(r.deltas[75], 41u);
}

TEST(Runner, WritesCsvAndChecksStaleCheckpoints) {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "multab_runner_test";
    fs::create_directories(dir);
    const std::string out = (dir / "tab.csv").string();
    const std::string ckpt = (dir / "tab.ckpt").string();
    fs::remove(out);
    fs::remove(ckpt);

    TabulateRunOptions opt;
    opt.n_max = 10;
    opt.out_path = out;
    opt.checkpoint_path = ckpt;
    opt.checkpoint_every = 4;
    EXPECT_EQ(run_tabulation(opt), TabulateRunStatus::completed);

    const auto rows = read_tabulation_csv(out);
    ASSERT_EQ(rows.size(), 10u);
    EXPECT_EQ(rows.back().k, 10u);
    EXPECT_EQ(rows.back().delta, 4u);  // delta(10) = 10 - (42 - 36)
    EXPECT_EQ(rows.back().m, 42u);

    // A checkpoint for different parameters must be rejected.
    TabulateRunOptions other = opt;
    other.n_max = 12;
    EXPECT_THROW(run_tabulation(other), std::invalid_argument);
    fs::remove_all(dir);
}

TEST(Runner, KillAndResumeIsByteIdentical) {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "multab_resume_test";
    fs::create_directories(dir);

    auto read_file = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };

    const std::uint64_t n_max = 10000;
    TabulateRunOptions base;
    base.n_max = n_max;
    base.wheel = 6;
    base.workers = 2;
    base.checkpoint_every = 512;

    base.out_path = (dir / "uninterrupted.csv").string();
    base.checkpoint_path = (dir / "uninterrupted.ckpt").string();
    ASSERT_EQ(run_tabulation(base), TabulateRunStatus::completed);
    const std::string want = read_file(base.out_path);

    for (const AbortPoint ap : {AbortPoint::before_checkpoint, AbortPoint::after_checkpoint}) {
        for (const std::uint64_t abort_k : {997ull, 5000ull, 9983ull}) {
            TabulateRunOptions opt = base;
            opt.out_path = (dir / "interrupted.csv").string();
            opt.checkpoint_path = (dir / "interrupted.ckpt").string();
            fs::remove(opt.out_path);
            fs::remove(opt.checkpoint_path);
            opt.abort_point = ap;
            opt.abort_after_k = abort_k;
            ASSERT_EQ(run_tabulation(opt), TabulateRunStatus::aborted_by_hook);

            TabulateRunOptions resume = opt;
            resume.abort_point = AbortPoint::none;
            ASSERT_EQ(run_tabulation(resume), TabulateRunStatus::completed);
            ASSERT_EQ(read_file(opt.out_path), want)
                << "abort at k=" << abort_k << " point=" << static_cast<int>(ap);
        }
    }
    fs::remove_all(dir);
}

TEST(Checkpoint, RoundTrip) {
    namespace fs = std::filesystem;
    const auto path = (fs::temp_directory_path() / "multab_ckpt_roundtrip").string();
    TabulationCheckpoint cp;
    cp.n_max = 123456;
    cp.wheel = 60;
    cp.last_k = 999;
    cp.delta_sum = 31337;
    cp.out_bytes = 4096;
    cp.output_path = "/tmp/some path/tab.csv";
    write_checkpoint(path, cp);
    const auto back = read_checkpoint(path);
    EXPECT_EQ(back.n_max, cp.n_max);
    EXPECT_EQ(back.wheel, cp.wheel);
    EXPECT_EQ(back.last_k, cp.last_k);
    EXPECT_EQ(back.delta_sum, cp.delta_sum);
    EXPECT_EQ(back.out_bytes, cp.out_bytes);
    EXPECT_EQ(back.output_path, cp.output_path);
    fs::remove(path);
}

}  // namespace
}  // namespace multab
