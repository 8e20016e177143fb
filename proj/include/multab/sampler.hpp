// Uniform random integers delivered with their prime-power factorization.
// No factoring ever happens above the small-value base case: numbers are
// assembled from prime powers, with primality established by Miller-Rabin.
//
// bach_b(N): uniform on [1, N]. Recurses to the half interval with
// probability floor(N/2)/N, else delegates to bach_r.
//
// bach_r(N): uniform on the integers of (floor(N/2), N]. One round:
//   1. propose a prime power q = p^e <= N, drawn block-by-bit-length so
//      the proposal is log-uniform, and thin it by the computable ratio
//        A(q) = |block(q)| * ln(p) * |S_q| / (1.5 * N * ln N) <= 1,
//      leaving q with probability proportional to ln(p) * |S_q|, where
//      S_q = integers in (N/(2q), N/q] (|S_q| = M - M/2 for M = floor(N/q));
//   2. draw the cofactor y uniform on S_q (recursive bach_r on M, with the
//      at-most-one low outlier rejected exactly);
//   3. accept x = q*y with probability ln(floor(N/2)+1)/ln(x) <= 1.
// Summing over the prime-power divisors q = p^e | x collapses step 1's
// weight to ln(x) (since sum of e_p ln p = ln x), which step 3 divides
// back out, leaving every x in the interval with equal mass. Expected
// cost stays at O(log N) primality tests per draw.
//
// kalai_sample(N): uniform on [1, N]. Draws the nonincreasing chain
// N >= s_1 >= s_2 >= ... >= 1 with s_{i+1} uniform on [1, s_i], keeps the
// prime s_i (with repetition), forms r = product, and accepts with
// probability r/N (exact integer comparison). Order (log N)^2 primality
// tests per draw.

#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>

#include "multab/factored.hpp"
#include "multab/primality.hpp"
#include "multab/rng.hpp"

namespace multab {

struct SamplerStats {
    std::uint64_t samples = 0;
    std::uint64_t primality_tests = 0;
    std::uint64_t restarts = 0;

    void merge(const SamplerStats& o) {
        samples += o.samples;
        primality_tests += o.primality_tests;
        restarts += o.restarts;
    }
};

namespace detail {

// Below this the interval is sampled directly and factored by trial
// division (no primality tests, exact).
inline constexpr std::uint64_t kSmallDirect = 32;

inline FactoredInt bach_r_impl(const cpp_int& N, RandomStream& rng, int rounds,
                               SamplerStats& stats);

// y uniform on the integers of (N/(2q), N/q], factored.
inline FactoredInt bach_r_cofactor(const cpp_int& N, const cpp_int& q, RandomStream& rng,
                                   int rounds, SamplerStats& stats) {
    const cpp_int M = N / q;
    if (M == 1) return FactoredInt::one();
    for (;;) {
        FactoredInt y = bach_r_impl(M, rng, rounds, stats);
        if (2 * q * y.value > N) return y;  // reject the at-most-one low outlier
        ++stats.restarts;
    }
}

inline FactoredInt bach_r_impl(const cpp_int& N, RandomStream& rng, int rounds,
                               SamplerStats& stats) {
    if (N < 2) throw std::domain_error("bach_r: N must be >= 2");
    if (N <= kSmallDirect) {
        const std::uint64_t n64 = N.convert_to<std::uint64_t>();
        return factor_small(rng.uniform_u64(n64 / 2 + 1, n64));
    }

    const std::uint64_t L = msb(N) + 1;  // bit length
    const double ln_N = log_cpp_int(N);
    const cpp_int half_floor = N / 2;
    const double ln_half_next = log_cpp_int(half_floor + 1);

    for (;;) {
        // Propose q = p^e log-uniformly: bit length first, then uniform
        // inside the block.
        const std::uint64_t b = rng.uniform_u64(1, L);
        const cpp_int blk_lo = cpp_int(1) << (b - 1);
        const cpp_int blk_hi = b == L ? N : (cpp_int(1) << b) - 1;
        if (blk_hi < blk_lo) continue;
        const cpp_int c = rng.uniform_int(blk_lo, blk_hi);
        if (c < 2) continue;
        ++stats.primality_tests;
        const auto pp = is_prime_power(c, rounds, rng);
        if (!pp) continue;
        const cpp_int& q = c;
        const cpp_int& p = pp->first;

        const cpp_int M = N / q;
        const cpp_int S_q = M - M / 2;  // |(N/(2q), N/q]|, never zero
        const cpp_int blk_size = blk_hi - blk_lo + 1;
        const double ln_accept_q = log_cpp_int(blk_size) + std::log(log_cpp_int(p)) +
                                   log_cpp_int(S_q) - std::log(1.5) - ln_N - std::log(ln_N);
        if (rng.next_unit() >= std::exp(ln_accept_q)) {
            ++stats.restarts;
            continue;
        }

        FactoredInt y = bach_r_cofactor(N, q, rng, rounds, stats);
        FactoredInt x = y;
        x.mul_prime_power(p, pp->second);

        // Final thinning makes the law exactly uniform on the interval.
        if (rng.next_unit() < ln_half_next / log_cpp_int(x.value)) return x;
        ++stats.restarts;
    }
}

}  // namespace detail

// Uniform factored integer on (floor(N/2), N].
inline FactoredInt bach_r(const cpp_int& N, RandomStream& rng, int rounds = 30,
                          SamplerStats* stats = nullptr) {
    SamplerStats local;
    SamplerStats& s = stats ? *stats : local;
    FactoredInt out = detail::bach_r_impl(N, rng, rounds, s);
    ++s.samples;
    return out;
}

// Uniform factored integer on [1, N] (Bach's procedure B shape: halve with
// probability floor(N/2)/N, else take the top interval).
inline FactoredInt bach_b(const cpp_int& N, RandomStream& rng, int rounds = 30,
                          SamplerStats* stats = nullptr) {
    if (N < 1) throw std::domain_error("bach_b: N must be >= 1");
    SamplerStats local;
    SamplerStats& s = stats ? *stats : local;
    cpp_int cur = N;
    for (;;) {
        if (cur == 1) {
            ++s.samples;
            return FactoredInt::one();
        }
        // u < floor(N/2)/N realized as an exact integer draw.
        const cpp_int t = rng.uniform_int(1, cur);
        if (t <= cur / 2) {
            cur /= 2;
            continue;
        }
        FactoredInt out = detail::bach_r_impl(cur, rng, rounds, s);
        ++s.samples;
        return out;
    }
}

// Kalai's sampler: uniform factored integer on [1, N].
inline FactoredInt kalai_sample(const cpp_int& N, RandomStream& rng, int rounds = 30,
                                SamplerStats* stats = nullptr) {
    if (N < 1) throw std::domain_error("kalai_sample: N must be >= 1");
    SamplerStats local;
    SamplerStats& s = stats ? *stats : local;
    if (N == 1) {
        ++s.samples;
        return FactoredInt::one();
    }
    std::vector<cpp_int> primes;
    for (;;) {
        primes.clear();
        cpp_int r = 1;
        cpp_int seq = N;
        bool overflowed = false;
        for (;;) {
            seq = rng.uniform_int(1, seq);
            if (seq == 1) break;
            ++s.primality_tests;
            if (is_probable_prime(seq, rounds, rng).is_probably_prime()) {
                r *= seq;
                if (r > N) {  // no acceptance possible; restart now
                    overflowed = true;
                    break;
                }
                primes.push_back(seq);
            }
        }
        if (!overflowed) {
            // Accept with probability r/N, as an exact integer comparison.
            const cpp_int t = rng.uniform_int(1, N);
            if (t <= r) {
                FactoredInt out;
                std::sort(primes.begin(), primes.end());
                for (const cpp_int& p : primes) out.mul_prime_power(p, 1);
                ++s.samples;
                return out;
            }
        }
        ++s.restarts;
    }
}

enum class SamplerKind { bach, kalai };

inline FactoredInt draw_factored(SamplerKind kind, const cpp_int& N, RandomStream& rng,
                                 int rounds = 30, SamplerStats* stats = nullptr) {
    return kind == SamplerKind::bach ? bach_b(N, rng, rounds, stats)
                                     : kalai_sample(N, rng, rounds, stats);
}

struct BenchmarkResult {
    SamplerStats bach;
    SamplerStats kalai;
    double bach_seconds = 0;
    double kalai_seconds = 0;
};

// Side-by-side primality-test counts and wall time.
inline BenchmarkResult sampler_benchmark(const cpp_int& N, std::uint64_t draws,
                                         RandomStream& rng, int rounds = 30) {
    BenchmarkResult out;
    if (draws == 0) return out;
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    for (std::uint64_t i = 0; i < draws; ++i) bach_b(N, rng, rounds, &out.bach);
    auto t1 = clock::now();
    for (std::uint64_t i = 0; i < draws; ++i) kalai_sample(N, rng, rounds, &out.kalai);
    auto t2 = clock::now();
    out.bach_seconds = std::chrono::duration<double>(t1 - t0).count();
    out.kalai_seconds = std::chrono::duration<double>(t2 - t1).count();
    return out;
}

}  // namespace multab
