// delta(n): the number of multiples mn (1 <= m <= n) that already appear
// in the (n-1) x (n-1) multiplication table. M(n) = M(n-1) + n - delta(n).
//
// The computation marks the distinct products of "the shape": the union of
// rectangles [1, d) x [1, n/d) over divisors d <= sqrt(n). Row i uses the
// bound n/d(i) with d(i) the smallest divisor of n exceeding i, so every
// product marked is < n and an n-bit scratch vector suffices.
//
// A complete divisor-pair list is the caller's contract; feeding an
// incomplete (but structurally valid) list yields a lower bound on delta.

#pragma once

#include <cstdint>
#include <stdexcept>

#include "multab/bitvec.hpp"
#include "multab/spf.hpp"

namespace multab {

struct DeltaRecord {
    std::uint64_t n = 0;
    std::uint64_t delta = 0;
    std::uint64_t constructed = 0;  // products actually visited (diagnostic)
};

// Core marking loop. scratch must be zeroed over [0, n) on entry and is
// left marked; callers that reuse it must reset_below(n) afterwards.
inline DeltaRecord delta(std::uint64_t n, const DivisorPairList& D, BitVector& scratch) {
    if (D.n != n) throw std::invalid_argument("delta: divisor list is for a different n");
    D.validate();
    if (scratch.size() < n) throw std::length_error("delta: scratch shorter than n");

    DeltaRecord rec;
    rec.n = n;
    scratch.invalidate_cache();
    const std::uint64_t row_end = D.last().small;  // rows i < d_{l-1}
    std::size_t k = 0;
    for (std::uint64_t i = 1; i < row_end; ++i) {
        if (i == D.pairs[k].small) ++k;
        const std::uint64_t bound = D.pairs[k].large;  // j < n / d_k
        if (bound <= i) continue;
        rec.constructed += bound - i;
        for (std::uint64_t j = i, p = i * i; j < bound; ++j, p += i)
            scratch.set_unchecked(p);
    }
    rec.delta = scratch.weight_below(n);
    return rec;
}

// Convenience wrapper building the pair list from the sieve.
inline DeltaRecord delta(std::uint64_t n, const SpfTable& spf, BitVector& scratch) {
    DivisorPairList D;
    divisor_pairs_into(n, spf, D);
    return delta(n, D, scratch);
}

}  // namespace multab
