// Smallest-prime-factor sieve and the divisor machinery built on it:
// factorizations, divisor lists, divisor pairs [d, n/d] with d <= sqrt(n),
// prime ranges, and the dyadic divisor-interval count tau_plus.
//
// The table is immutable after construction and safe to share across
// worker threads.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace multab {

struct PrimePower {
    std::uint64_t prime;
    std::uint32_t exponent;
};

class SpfTable {
public:
    // Indexable for 2 <= k <= limit.
    explicit SpfTable(std::uint64_t limit) : limit_(limit), spf_(limit + 1, 0) {
        if (limit > 0xFFFFFFFFull)
            throw std::length_error("SpfTable: limit above 2^32 unsupported");
        for (std::uint64_t i = 2; i <= limit; ++i) {
            if (spf_[i] == 0) {
                for (std::uint64_t j = i; j <= limit; j += i)
                    if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
            }
        }
    }

    std::uint64_t limit() const { return limit_; }

    std::uint32_t spf(std::uint64_t k) const {
        capacity_check(k);
        if (k < 2) throw std::domain_error("spf: k < 2");
        return spf_[k];
    }

    bool is_prime(std::uint64_t k) const {
        capacity_check(k);
        return k >= 2 && spf_[k] == k;
    }

    // Prime-power factorization, primes ascending.
    std::vector<PrimePower> factor(std::uint64_t n) const {
        std::vector<PrimePower> out;
        factor_into(n, out);
        return out;
    }

    void factor_into(std::uint64_t n, std::vector<PrimePower>& out) const {
        capacity_check(n);
        if (n < 1) throw std::domain_error("factor: n < 1");
        out.clear();
        while (n > 1) {
            const std::uint64_t p = spf_[n];
            std::uint32_t e = 0;
            do {
                n /= p;
                ++e;
            } while (n > 1 && spf_[n] == p);
            out.push_back({p, e});
        }
    }

    // All divisors of n, ascending.
    std::vector<std::uint64_t> divisors(std::uint64_t n) const {
        std::vector<std::uint64_t> out;
        divisors_into(n, out);
        return out;
    }

    void divisors_into(std::uint64_t n, std::vector<std::uint64_t>& out) const {
        thread_local std::vector<PrimePower> fac;
        factor_into(n, fac);
        out.assign(1, 1);
        for (const auto& [p, e] : fac) {
            const std::size_t base = out.size();
            std::uint64_t pk = 1;
            for (std::uint32_t k = 1; k <= e; ++k) {
                pk *= p;
                for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
            }
        }
        std::sort(out.begin(), out.end());
    }

    std::uint64_t divisor_count(std::uint64_t n) const {
        thread_local std::vector<PrimePower> fac;
        factor_into(n, fac);
        std::uint64_t tau = 1;
        for (const auto& [p, e] : fac) tau *= (e + 1);
        return tau;
    }

    std::uint64_t largest_prime_factor(std::uint64_t n) const {
        capacity_check(n);
        if (n < 2) throw std::domain_error("largest_prime_factor: n < 2");
        std::uint64_t best = 0;
        while (n > 1) {
            best = spf_[n];
            while (n % best == 0) n /= best;
        }
        return best;
    }

    // Primes p with lo <= p <= hi, ascending.
    std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) const {
        capacity_check(hi);
        std::vector<std::uint64_t> out;
        for (std::uint64_t k = std::max<std::uint64_t>(lo, 2); k <= hi; ++k)
            if (spf_[k] == k) out.push_back(k);
        return out;
    }

private:
    void capacity_check(std::uint64_t k) const {
        if (k > limit_) throw std::length_error("SpfTable: value exceeds sieve limit");
    }

    std::uint64_t limit_;
    std::vector<std::uint32_t> spf_;
};

// Ordered divisor pairs [d_i, n/d_i] with d_i <= sqrt(n).
//   pairs[0] = (1, n); small values strictly increasing;
//   the last small value is the largest divisor of n that is <= sqrt(n).
struct DivisorPairList {
    struct Pair {
        std::uint64_t small;
        std::uint64_t large;
    };
    std::uint64_t n = 0;
    std::vector<Pair> pairs;

    std::size_t length() const { return pairs.size(); }
    const Pair& last() const { return pairs.back(); }

    // Structural invariants (cheap; completeness is the builder's contract).
    void validate() const {
        if (pairs.empty() || pairs.front().small != 1 || pairs.front().large != n)
            throw std::invalid_argument("DivisorPairList: first pair must be (1, n)");
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (pairs[i].small * pairs[i].large != n)
                throw std::invalid_argument("DivisorPairList: small*large != n");
            if (i > 0 && pairs[i].small <= pairs[i - 1].small)
                throw std::invalid_argument("DivisorPairList: small values not increasing");
        }
        if (pairs.back().small > pairs.back().large)
            throw std::invalid_argument("DivisorPairList: last small exceeds sqrt(n)");
    }
};

inline void divisor_pairs_into(std::uint64_t n, const SpfTable& spf, DivisorPairList& out) {
    if (n < 1) throw std::domain_error("divisor_pairs: n < 1");
    thread_local std::vector<std::uint64_t> divs;
    spf.divisors_into(n, divs);
    out.n = n;
    out.pairs.clear();
    for (std::uint64_t d : divs) {
        if (d * d > n) break;
        out.pairs.push_back({d, n / d});
    }
}

inline DivisorPairList divisor_pairs(std::uint64_t n, const SpfTable& spf) {
    DivisorPairList out;
    divisor_pairs_into(n, spf, out);
    return out;
}

// Number of integers k (including k = -1, for the divisor 1) such that the
// dyadic interval (2^k, 2^(k+1)] contains at least one divisor of n.
inline int tau_plus(std::uint64_t n, const SpfTable& spf) {
    thread_local std::vector<std::uint64_t> divs;
    spf.divisors_into(n, divs);
    std::uint64_t mask = 0;  // bit (k+1) marks interval index k, k >= -1
    for (std::uint64_t d : divs) {
        const int k = (d == 1) ? -1 : std::bit_width(d - 1) - 1;
        mask |= std::uint64_t{1} << (k + 1);
    }
    return std::popcount(mask);
}

}  // namespace multab
