#include "multab/primality.hpp"

#include <gtest/gtest.h>

#include "support/oracles.hpp"

namespace multab {
namespace {

TEST(MillerRabin, SmallCases) {
    RandomStream rng(1);
    EXPECT_TRUE(is_probable_prime(2, 30, rng).is_probably_prime());
    EXPECT_TRUE(is_probable_prime(3, 30, rng).is_probably_prime());
    EXPECT_FALSE(is_probable_prime(0, 30, rng).is_probably_prime());
    EXPECT_FALSE(is_probable_prime(1, 30, rng).is_probably_prime());
    EXPECT_FALSE(is_probable_prime(561, 30, rng).is_probably_prime());  // 3*11*17, Carmichael
    EXPECT_TRUE(is_probable_prime(7919, 30, rng).is_probably_prime());  // 1000th prime
}

TEST(MillerRabin, AgreesWithSieveToMillion) {
    const auto sieve = testing::sieve_primes(1000000);
    RandomStream rng(2);
    for (std::uint64_t n = 0; n <= 1000000; ++n)
        ASSERT_EQ(is_probable_prime(n, 20, rng).is_probably_prime(), sieve[n]) << n;
}

TEST(MillerRabin, RandomBasesRejectCompositesAndCarmichaels) {
    const auto sieve = testing::sieve_primes(1200000);
    // Carmichael numbers below 10^6.
    std::vector<std::uint64_t> carmichaels = {
        561,    1105,   1729,   2465,   2821,   6601,   8911,   10585,  15841,  29341,
        41041,  46657,  52633,  62745,  63973,  75361,  101101, 115921, 126217, 162401,
        172081, 188461, 252601, 278545, 294409, 314821, 334153, 340561, 399001, 410041,
        449065, 488881, 512461, 530881, 552721, 656601, 658801, 670033, 748657, 825265,
        838201, 852841, 997633};
    for (std::uint64_t c : carmichaels) ASSERT_FALSE(sieve[c]) << c;

    // First 10^4 Carmichael-free composites.
    std::vector<std::uint64_t> composites;
    for (std::uint64_t n = 4; composites.size() < 10000; ++n) {
        if (sieve[n]) continue;
        if (std::find(carmichaels.begin(), carmichaels.end(), n) != carmichaels.end()) continue;
        composites.push_back(n);
    }

    for (std::uint64_t run = 0; run < 100; ++run) {
        RandomStream rng(1000 + run);
        for (std::uint64_t c : carmichaels)
            ASSERT_FALSE(is_probable_prime(c, 20, rng, /*force_random_bases=*/true)
                             .is_probably_prime())
                << c;
    }
    RandomStream rng(77);
    for (std::uint64_t run = 0; run < 100; ++run)
        for (std::uint64_t c : composites)
            if (!is_probable_prime(c, 20, rng, /*force_random_bases=*/true).is_probably_prime())
                continue;
            else
                FAIL() << "composite " << c << " passed";
    SUCCEED();
}

TEST(MillerRabin, BigIntegers) {
    RandomStream rng(3);
    const cpp_int m61 = (cpp_int(1) << 61) - 1;  // Mersenne prime
    EXPECT_TRUE(is_probable_prime(m61, 30, rng).is_probably_prime());
    const cpp_int m67 = (cpp_int(1) << 67) - 1;  // 193707721 * 761838257287
    EXPECT_FALSE(is_probable_prime(m67, 30, rng).is_probably_prime());
    const cpp_int m89 = (cpp_int(1) << 89) - 1;  // Mersenne prime
    EXPECT_TRUE(is_probable_prime(m89, 30, rng).is_probably_prime());
    EXPECT_TRUE(is_probable_prime(m89, 30, rng, true).is_probably_prime());
    const PrimalityVerdict v = is_probable_prime(m89, 17, rng, true);
    EXPECT_EQ(v.rounds, 17);
}

TEST(PerfectPower, Examples) {
    EXPECT_EQ(is_perfect_power(8).value(), std::make_pair(cpp_int(2), 3u));
    EXPECT_EQ(is_perfect_power(36).value(), std::make_pair(cpp_int(6), 2u));
    EXPECT_FALSE(is_perfect_power(7).has_value());
    EXPECT_FALSE(is_perfect_power(1).has_value());
    EXPECT_FALSE(is_perfect_power(2).has_value());
}

TEST(PerfectPower, RecoversMinimalBaseUpTo100Pow10) {
    for (std::uint64_t b = 2; b <= 100; ++b) {
        for (unsigned e = 2; e <= 10; ++e) {
            const cpp_int n = boost::multiprecision::pow(cpp_int(b), e);
            const auto pp = is_perfect_power(n);
            ASSERT_TRUE(pp.has_value()) << b << "^" << e;
            // The reported base is minimal: its own perfect-power check fails.
            EXPECT_FALSE(is_perfect_power(pp->first).has_value()) << b << "^" << e;
            EXPECT_EQ(boost::multiprecision::pow(pp->first, pp->second), n);
        }
    }
}

TEST(PerfectPower, BigValues) {
    const cpp_int big = boost::multiprecision::pow(cpp_int(1234567891), 7);
    const auto pp = is_perfect_power(big);
    ASSERT_TRUE(pp.has_value());
    EXPECT_EQ(pp->first, 1234567891);
    EXPECT_EQ(pp->second, 7u);
}

TEST(PrimePower, Examples) {
    RandomStream rng(4);
    EXPECT_EQ(is_prime_power(27, 30, rng).value(), std::make_pair(cpp_int(3), 3u));
    EXPECT_FALSE(is_prime_power(12, 30, rng).has_value());
    EXPECT_EQ(is_prime_power(125, 30, rng).value(), std::make_pair(cpp_int(5), 3u));
    EXPECT_EQ(is_prime_power(7, 30, rng).value(), std::make_pair(cpp_int(7), 1u));
    EXPECT_FALSE(is_prime_power(36, 30, rng).has_value());  // 6^2, base composite
    EXPECT_FALSE(is_prime_power(1, 30, rng).has_value());
}

TEST(Iroot, ExactFloors) {
    EXPECT_EQ(iroot(0, 3), 0);
    EXPECT_EQ(iroot(1, 5), 1);
    EXPECT_EQ(iroot(26, 3), 2);
    EXPECT_EQ(iroot(27, 3), 3);
    EXPECT_EQ(iroot(28, 3), 3);
    const cpp_int n = boost::multiprecision::pow(cpp_int(10), 60);
    EXPECT_EQ(iroot(n, 4), boost::multiprecision::pow(cpp_int(10), 15));
    EXPECT_EQ(iroot(n - 1, 4), boost::multiprecision::pow(cpp_int(10), 15) - 1);
}

}  // namespace
}  // namespace multab
