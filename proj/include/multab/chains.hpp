// Subquadratic tabulation.
//
// Split point: L(n) = exp(sqrt(log n * log log n)), B = floor(L^(1/sqrt 2)).
// Integers k <= n fall into three classes:
//   (a) B-smooth k: delta(k) by the incremental algorithm;
//   (b) k = m*q with q the largest prime factor and q > max(B, m): covered
//       by the chain for multiplier m, which computes delta(m*q_start) once
//       and then shifts the rectangle strips prime by prime, learning
//       delta(m*q) for every prime q in (max(B, m), n/m] from one shared
//       bit vector;
//   (c) residual non-smooth k with q <= m: incremental fallback (divisor
//       lists of m*q and m*p no longer align when q can divide m).
// Every k is covered exactly once.
//
// Chains rely on q > m: then the divisors of m*q that are <= sqrt(m*q) are
// exactly the divisors of m, so consecutive chain members share one
// rectangle staircase and differ only in the strip bounds m*q/d.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "multab/bitvec.hpp"
#include "multab/delta.hpp"
#include "multab/parallel.hpp"
#include "multab/spf.hpp"
#include "multab/tabulate.hpp"
#include "multab/wheel.hpp"

namespace multab {

// L(n) = exp(sqrt(log n * log log n)), natural logs.
inline double l_function(std::uint64_t n) {
    if (n < 16) throw std::domain_error("l_function: n must be >= 16");
    const double ln_n = std::log(static_cast<double>(n));
    return std::exp(std::sqrt(ln_n * std::log(ln_n)));
}

inline constexpr double kSmoothGamma = 0.70710678118654752440;  // 1/sqrt(2)

struct SmoothSplit {
    std::uint64_t n = 0;
    double L = 0;
    double gamma = kSmoothGamma;
    std::uint64_t B = 0;
};

// gamma is fixed at 1/sqrt(2) by the time balance; the override exists for
// experiments only.
inline SmoothSplit make_smooth_split(std::uint64_t n, double gamma = kSmoothGamma) {
    SmoothSplit s;
    s.n = n;
    s.gamma = gamma;
    if (n < 16) {  // no meaningful split; treat everything as smooth
        s.L = 0;
        s.B = n;
        return s;
    }
    s.L = l_function(n);
    s.B = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::pow(s.L, gamma)));
    return s;
}

// One chain: fixed multiplier m, primes q_start = first prime above
// max(B, m), up through Q = largest prime with m*Q <= n.
struct ChainSpec {
    std::uint64_t m = 0;
    std::uint64_t q_start = 0;
    std::uint64_t Q = 0;
    std::vector<std::uint64_t> divisors_of_m;  // ascending; smalls of every m*q
};

// Algorithm step: extends the marks of delta(m*p) to delta(m*q) by walking
// the shifted strips [m*p/d, m*q/d) for each divisor d of m. A holds the
// marked products of delta(m*p) with Hamming weight `weight`; returns
// delta(m*q). Only 0 -> 1 transitions are counted.
inline std::uint64_t delta_chain_step(BitVector& A, std::uint64_t weight,
                                      const ChainSpec& spec, std::uint64_t p, std::uint64_t q,
                                      std::uint64_t* visits = nullptr) {
    if (p <= spec.m || q < p) throw std::invalid_argument("chain step requires m < p <= q");
    if (p == q) return weight;  // zero shift, empty strips
    const auto& divs = spec.divisors_of_m;
    const std::uint64_t mp = spec.m * p;
    const std::uint64_t mq = spec.m * q;
    if (A.size() < mq) throw std::length_error("chain step: bit vector shorter than m*q");
    A.invalidate_cache();

    // Rows i < m with the usual staircase over the divisors of m.
    std::size_t k = 0;
    std::uint64_t local_visits = 0;
    for (std::uint64_t i = 1; i < divs.back(); ++i) {
        if (i == divs[k]) ++k;
        const std::uint64_t j_lo = mp / divs[k];
        const std::uint64_t j_hi = mq / divs[k];  // exclusive
        if (j_lo >= j_hi) continue;
        local_visits += j_hi - j_lo;
        for (std::uint64_t j = j_lo, prod = i * j_lo; j < j_hi; ++j, prod += i)
            if (!A.set_and_report_unchecked(prod)) ++weight;
    }
    if (visits) *visits += local_visits;
    return weight;
}

// Runs a whole chain, emitting (k = m*q, delta(k)) for each chain prime in
// ascending order. A must be zeroed over [0, m*Q) on entry; it is left
// marked (callers reset it for reuse). Returns the number of emissions.
template <class Sink>
std::size_t run_chain(const ChainSpec& spec, const SpfTable& spf, BitVector& A, Sink&& sink,
                      std::uint64_t* visits = nullptr) {
    if (spec.m == 0 || spec.q_start <= spec.m) throw std::invalid_argument("bad chain spec");
    if (spec.q_start > spec.Q) return 0;

    // Initialize with the incremental algorithm at m * q_start, marking
    // into the shared vector so the chain can extend it.
    DivisorPairList D0;
    D0.n = spec.m * spec.q_start;
    for (std::uint64_t d : spec.divisors_of_m) D0.pairs.push_back({d, D0.n / d});
    DeltaRecord rec0 = delta(D0.n, D0, A);
    if (visits) *visits += rec0.constructed;
    std::uint64_t weight = rec0.delta;
    sink(D0.n, weight);
    std::size_t emitted = 1;

    std::uint64_t p = spec.q_start;
    for (std::uint64_t q = p + 1; q <= spec.Q; ++q) {
        if (!spf.is_prime(q)) continue;
        weight = delta_chain_step(A, weight, spec, p, q, visits);
        sink(spec.m * q, weight);
        ++emitted;
        p = q;
    }
    return emitted;
}

// Classification + dispatch. Identical output to tabulate_m. The optional
// tally records how many paths produced each k (tests assert it is exactly
// one everywhere).
inline TabulationResult tabulate_m_subquadratic(std::uint64_t n_max, unsigned workers = 1,
                                                std::vector<std::uint8_t>* coverage_tally = nullptr) {
    if (n_max < 1) throw std::domain_error("tabulate_m_subquadratic: n_max must be positive");
    const SpfTable spf(n_max);
    const SmoothSplit split = make_smooth_split(n_max);

    TabulationResult r;
    r.n_max = n_max;
    r.deltas.assign(n_max + 1, 0);
    r.visit_counts.assign(n_max + 1, 0);
    if (coverage_tally) coverage_tally->assign(n_max + 1, 0);

    // Classify every k: chain-covered k are exactly m*q for a prime
    // q > max(B, m); everything else goes through the incremental path.
    std::vector<std::uint32_t> direct_ks;  // smooth + residual fallback
    std::vector<std::uint64_t> chain_ms;
    {
        std::vector<std::uint8_t> is_chain_m(n_max + 1, 0);
        for (std::uint64_t k = 1; k <= n_max; ++k) {
            if (k == 1 || spf.largest_prime_factor(k) <= split.B) {
                direct_ks.push_back(static_cast<std::uint32_t>(k));  // (a) smooth
                continue;
            }
            const std::uint64_t q = spf.largest_prime_factor(k);
            const std::uint64_t m = k / q;
            if (q > m)
                is_chain_m[m] = 1;  // (b) covered by the chain for m
            else
                direct_ks.push_back(static_cast<std::uint32_t>(k));  // (c) residual
        }
        for (std::uint64_t m = 1; m <= n_max; ++m)
            if (is_chain_m[m]) chain_ms.push_back(m);
    }

    // Chains are one task each; the direct list is range-partitioned.
    // Larger chains (small m) first for balance.
    const std::size_t n_chain_tasks = chain_ms.size();
    const std::uint64_t direct_chunk = 512;
    const std::size_t n_direct_tasks =
        (direct_ks.size() + direct_chunk - 1) / direct_chunk;

    std::atomic<std::size_t> next_task{0};
    const std::size_t total_tasks = n_chain_tasks + n_direct_tasks;

    run_workers(workers, [&](unsigned) {
        BitVector A(n_max + 1);
        WheelScratch wheel_scratch(n_max);
        DivisorPairList D;
        std::vector<std::uint64_t> divs;
        for (;;) {
            const std::size_t t = next_task.fetch_add(1);
            if (t >= total_tasks) break;
            if (t < n_chain_tasks) {
                const std::uint64_t m = chain_ms[t];
                ChainSpec spec;
                spec.m = m;
                spf.divisors_into(m, spec.divisors_of_m);
                const std::uint64_t lo = std::max(split.B, m) + 1;
                const std::uint64_t hi = n_max / m;
                spec.q_start = 0;
                for (std::uint64_t q = lo; q <= hi; ++q)
                    if (spf.is_prime(q)) {
                        spec.q_start = q;
                        break;
                    }
                if (spec.q_start == 0) continue;  // no prime in range; nothing to cover
                for (std::uint64_t q = hi;; --q)
                    if (spf.is_prime(q)) {
                        spec.Q = q;
                        break;
                    }
                std::uint64_t visits = 0;
                run_chain(spec, spf, A,
                          [&](std::uint64_t k, std::uint64_t d) {
                              r.deltas[k] = static_cast<std::uint32_t>(d);
                              if (coverage_tally) ++(*coverage_tally)[k];
                          },
                          &visits);
                // Attribute chain work to the chain's final k for reporting.
                r.visit_counts[spec.m * spec.Q] += visits;
                A.reset_below(spec.m * spec.Q);
            } else {
                const std::size_t c = t - n_chain_tasks;
                const std::size_t lo = c * direct_chunk;
                const std::size_t hi = std::min(lo + direct_chunk, direct_ks.size());
                for (std::size_t idx = lo; idx < hi; ++idx) {
                    const std::uint64_t k = direct_ks[idx];
                    divisor_pairs_into(k, spf, D);
                    // Wheel acceleration keeps the fallback affordable at
                    // scale; output is identical to the plain delta.
                    DeltaRecord rec;
                    if (k >= 1 << 14) {
                        rec = delta_wheel(k, D, 60, wheel_scratch);
                    } else {
                        rec = delta(k, D, A);
                        A.reset_below(k);
                    }
                    r.deltas[k] = static_cast<std::uint32_t>(rec.delta);
                    r.visit_counts[k] += rec.constructed;
                    if (coverage_tally) ++(*coverage_tally)[k];
                }
            }
        }
    });

    fill_m_values(r);
    return r;
}

}  // namespace multab
