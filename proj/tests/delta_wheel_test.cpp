#include "multab/delta.hpp"
#include "multab/wheel.hpp"

#include <gtest/gtest.h>

#include "multab/direct.hpp"
#include "support/oracles.hpp"

namespace multab {
namespace {

TEST(Delta, PrimeHasEmptyLoop) {
    SpfTable spf(100);
    BitVector scratch(100);
    const auto rec = delta(7, spf, scratch);
    EXPECT_EQ(rec.delta, 0u);
    EXPECT_EQ(rec.constructed, 0u);
}

TEST(Delta, WorkedExamples) {
    SpfTable spf(1000);
    BitVector scratch(1000);
    auto rec = delta(14, spf, scratch);  // delta(2p) = p - 1
    EXPECT_EQ(rec.delta, 6u);
    scratch.reset_below(14);

    rec = delta(75, spf, scratch);  // 26 even + 15 odd products
    EXPECT_EQ(rec.delta, 41u);
    scratch.reset_below(75);

    rec = delta(42, spf, scratch);
    EXPECT_EQ(rec.delta, 25u);
    EXPECT_EQ(rec.constructed, 41u);  // loop extents 20+12+4+3+2
    scratch.reset_below(42);
}

TEST(Delta, MatchesBruteForceUpTo4000) {
    const std::uint64_t n_max = 4000;
    SpfTable spf(n_max);
    const auto brute = testing::brute_tabulate(n_max);
    BitVector scratch(n_max);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const auto rec = delta(n, spf, scratch);
        ASSERT_EQ(rec.delta, brute.delta[n]) << "n=" << n;
        scratch.reset_below(n);
    }
}

TEST(Delta, ContractErrors) {
    SpfTable spf(100);
    BitVector small_scratch(10);
    EXPECT_THROW(delta(50, spf, small_scratch), std::length_error);

    BitVector scratch(100);
    DivisorPairList bad;
    bad.n = 42;
    bad.pairs = {{2, 21}, {3, 14}};  // missing leading (1, n)
    EXPECT_THROW(delta(42, bad, scratch), std::invalid_argument);

    DivisorPairList unsorted;
    unsorted.n = 42;
    unsorted.pairs = {{1, 42}, {3, 14}, {2, 21}, {6, 7}};
    EXPECT_THROW(delta(42, unsorted, scratch), std::invalid_argument);
}

// Dropping an interior divisor pair yields a lower bound.
TEST(Delta, IncompleteListGivesLowerBound) {
    SpfTable spf(10000);
    BitVector scratch(10000);
    for (std::uint64_t n : {42u, 75u, 360u, 720u, 2310u, 9240u}) {
        auto D = divisor_pairs(n, spf);
        const auto full = delta(n, D, scratch);
        scratch.reset_below(n);
        for (std::size_t drop = 1; drop + 1 < D.length(); ++drop) {
            DivisorPairList partial = D;
            partial.pairs.erase(partial.pairs.begin() + drop);
            const auto rec = delta(n, partial, scratch);
            scratch.reset_below(n);
            EXPECT_LE(rec.delta, full.delta) << "n=" << n << " drop=" << drop;
        }
    }
}

TEST(DeltaWheel, PaperThresholds) {
    SpfTable spf(1000);
    {
        const auto D = divisor_pairs(42, spf);
        const auto cfg = make_wheel_config(42, 1, D);
        ASSERT_FALSE(cfg.fallback);
        EXPECT_EQ(cfg.thresholds[0], 20u);  // first row has 20 distinct products
    }
    {
        const auto D = divisor_pairs(75, spf);
        const auto cfg = make_wheel_config(75, 2, D);
        ASSERT_FALSE(cfg.fallback);
        EXPECT_EQ(cfg.thresholds[0], 48u);  // 24 consecutive even products
        EXPECT_EQ(cfg.thresholds[1], 24u);  // 12 consecutive odd products
    }
    {
        const auto D = divisor_pairs(377, spf);
        const auto cfg = make_wheel_config(377, 6, D);
        ASSERT_FALSE(cfg.fallback);
        EXPECT_EQ(cfg.thresholds[0], 168u);  // 28 multiples of 6
        EXPECT_EQ(cfg.thresholds[3], 84u);   // 14 values 3 mod 6
        EXPECT_EQ(cfg.thresholds[2], 56u);
        EXPECT_EQ(cfg.thresholds[4], 56u);
        EXPECT_EQ(cfg.thresholds[1], 28u);
        EXPECT_EQ(cfg.thresholds[5], 28u);
    }
}

TEST(DeltaWheel, WorkedExamples) {
    SpfTable spf(1000);
    WheelScratch scratch(1000);
    {
        WheelBreakdown detail;
        const auto rec = delta_wheel(42, spf, 1, scratch, &detail);
        EXPECT_EQ(rec.delta, 25u);
        EXPECT_EQ(detail.arithmetic[0], 20u);  // products 1..20 counted, not marked
    }
    {
        WheelBreakdown detail;
        const auto rec = delta_wheel(75, spf, 2, scratch, &detail);
        EXPECT_EQ(rec.delta, 41u);
        EXPECT_EQ(detail.arithmetic[0] + detail.marked[0], 26u);  // 24 + {52, 56}
        EXPECT_EQ(detail.arithmetic[1] + detail.marked[1], 15u);  // 12 + {27, 33, 39}
        EXPECT_EQ(detail.marked[0], 2u);
        EXPECT_EQ(detail.marked[1], 3u);
    }
    {
        const auto rec = delta_wheel(377, spf, 6, scratch);
        EXPECT_EQ(rec.constructed, 119u);
        BitVector plain(1000);
        EXPECT_EQ(rec.delta, delta(377, spf, plain).delta);
    }
}

TEST(ConstructedCount, PaperValues) {
    SpfTable spf(1000);
    EXPECT_EQ(constructed_count(377, 0, spf), 270u);
    EXPECT_EQ(constructed_count(377, 6, spf), 119u);
    EXPECT_EQ(constructed_count(42, 0, spf), 41u);
}

TEST(DeltaWheel, EqualsPlainDeltaUpTo5000AllModuli) {
    const std::uint64_t n_max = 5000;
    SpfTable spf(n_max);
    BitVector plain(n_max);
    WheelScratch scratch(n_max);
    DivisorPairList D;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        divisor_pairs_into(n, spf, D);
        const auto want = delta(n, D, plain);
        plain.reset_below(n);
        for (std::uint32_t w : kWheelModuli) {
            const auto rec = delta_wheel(n, D, w, scratch);
            ASSERT_EQ(rec.delta, want.delta) << "n=" << n << " w=" << w;
        }
    }
}

TEST(DeltaWheel, ConstructedNonIncreasingWhenWheelRowsNonEmpty) {
    const std::uint64_t n_max = 10000;
    SpfTable spf(n_max);
    DivisorPairList D;
    for (std::uint64_t n = 2; n <= n_max; ++n) {
        divisor_pairs_into(n, spf, D);
        const std::uint64_t d_last = D.last().small;
        std::uint64_t prev = constructed_count(n, 0, spf);
        for (std::uint32_t w : kWheelModuli) {
            if (w >= d_last) break;  // row w empty; invariant not quantified here
            const std::uint64_t cur = constructed_count(n, w, spf);
            ASSERT_LE(cur, prev) << "n=" << n << " w=" << w;
            prev = cur;
        }
    }
}

// The marked product set of the shape equals a set-built oracle.
TEST(Delta, ShapeProductsMatchOracleSpotChecks) {
    SpfTable spf(3000);
    BitVector scratch(3000);
    for (std::uint64_t n : {36u, 42u, 75u, 377u, 720u, 1024u, 2310u, 2997u}) {
        const auto oracle = testing::brute_shape_products(n);
        const auto rec = delta(n, spf, scratch);
        EXPECT_EQ(rec.delta, oracle.size()) << "n=" << n;
        for (std::uint64_t p : oracle) EXPECT_TRUE(scratch.test(p));
        scratch.reset_below(n);
    }
}

}  // namespace
}  // namespace multab
