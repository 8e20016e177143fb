// Residue-class ("wheel") acceleration of the delta computation.
//
// For a modulus w, products are split by residue class mod w. Small
// consecutive products in each class are counted arithmetically instead of
// being constructed: class r has a threshold
//
//   C_r = max{ g * (bound_g - 1) : g | w, r == 0 (mod g), g < bound_g }
//
// where bound_g is the inner-loop bound the plain algorithm would use for
// row g (n divided by the smallest divisor of n exceeding g). Every value
// <= C_r in class r is a genuine product of the shape: writing it as g*j
// with j < bound_g, it lies in row g when j >= g and in row j otherwise.
//
// Rows g dividing w are skipped entirely (all their products fall at or
// below the thresholds of their classes). Other rows are walked with marks
// at or below C_r suppressed; rows <= w that do not divide w can still
// produce above-threshold products (row 4 under w = 6), so they must be
// processed. When n is prime, or w >= d_{l-1} makes the thresholds
// degenerate, the computation falls back to the plain algorithm.

#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "multab/bitvec.hpp"
#include "multab/delta.hpp"
#include "multab/spf.hpp"

namespace multab {

inline constexpr std::array<std::uint32_t, 5> kWheelModuli = {1, 2, 6, 12, 60};

inline bool is_supported_wheel(std::uint32_t w) {
    for (std::uint32_t m : kWheelModuli)
        if (w == m) return true;
    return false;
}

// Per-residue thresholds for one (n, w) pair.
struct WheelConfig {
    std::uint64_t n = 0;
    std::uint32_t w = 0;
    bool fallback = false;                  // run plain delta instead
    std::vector<std::uint64_t> thresholds;  // C_r per class; 0 = no run
};

inline WheelConfig make_wheel_config(std::uint64_t n, std::uint32_t w,
                                     const DivisorPairList& D) {
    if (!is_supported_wheel(w)) throw std::invalid_argument("wheel: unsupported modulus");
    WheelConfig cfg;
    cfg.n = n;
    cfg.w = w;
    const std::uint64_t d_last = D.last().small;
    if (D.length() < 2 || w >= d_last) {  // prime n, or degenerate thresholds
        cfg.fallback = true;
        return cfg;
    }
    cfg.thresholds.assign(w, 0);
    for (std::uint32_t g = 1; g <= w; ++g) {
        if (w % g != 0) continue;
        // smallest divisor of n strictly greater than g; exists among the
        // small divisors because g <= w < d_last
        std::uint64_t next_div = 0;
        for (const auto& pr : D.pairs)
            if (pr.small > g) {
                next_div = pr.small;
                break;
            }
        assert(next_div != 0);
        const std::uint64_t bound = n / next_div;  // row g marks j in [g, bound)
        if (g >= bound) continue;                  // row g is empty
        const std::uint64_t c = static_cast<std::uint64_t>(g) * (bound - 1);
        for (std::uint32_t r = 0; r < w; r += g)
            cfg.thresholds[r] = std::max(cfg.thresholds[r], c);
    }
    return cfg;
}

// Count of integers v in [1, C] with v == r (mod w).
inline std::uint64_t arithmetic_run_count(std::uint64_t C, std::uint32_t r, std::uint32_t w) {
    if (r == 0) return C / w;
    return (C >= r) ? (C - r) / w + 1 : 0;
}

// Per-class diagnostics for tests and rendering.
struct WheelBreakdown {
    std::vector<std::uint64_t> arithmetic;  // per class
    std::vector<std::uint64_t> marked;      // distinct above-threshold products per class
};

// Reusable scratch for wheel runs with any n <= n_max. Inside a run with
// modulus w, class r owns the word-aligned bit range
// [r * stride_w, (r+1) * stride_w), stride_w = align64(n_max / w + 2), so
// classes never share words and ranged clears stay exact.
struct WheelScratch {
    explicit WheelScratch(std::uint64_t n_max_)
        : n_max(n_max_), bits(n_max_ + 64 * 64 + 128 * 60) {}
    std::uint64_t stride_for(std::uint32_t w) const {
        return (n_max / w + 2 + 63) & ~std::uint64_t{63};
    }
    std::uint64_t n_max;
    BitVector bits;
};

// Same delta as the plain algorithm; constructed reports only the products
// actually visited (those above their class threshold).
inline DeltaRecord delta_wheel(std::uint64_t n, const DivisorPairList& D, std::uint32_t w,
                               WheelScratch& scratch, WheelBreakdown* detail = nullptr) {
    if (D.n != n) throw std::invalid_argument("delta_wheel: divisor list mismatch");
    if (n > scratch.n_max) throw std::length_error("delta_wheel: scratch too small");
    D.validate();
    WheelConfig cfg = make_wheel_config(n, w, D);
    if (cfg.fallback) {
        DeltaRecord rec = delta(n, D, scratch.bits);
        scratch.bits.reset_below(n);
        if (detail) {
            detail->arithmetic.assign(std::max<std::uint32_t>(w, 1), 0);
            detail->marked.assign(std::max<std::uint32_t>(w, 1), 0);
            detail->marked[0] = rec.delta;  // everything was constructed
        }
        return rec;
    }

    DeltaRecord rec;
    rec.n = n;
    scratch.bits.invalidate_cache();
    BitVector& bits = scratch.bits;
    const std::uint64_t stride = scratch.stride_for(w);
    assert(stride * w <= bits.size());

    const std::uint64_t row_end = D.last().small;
    std::size_t k = 0;
    for (std::uint64_t i = 1; i < row_end; ++i) {
        if (i == D.pairs[k].small) ++k;
        if (w % i == 0) continue;  // row fully covered by arithmetic runs
        const std::uint64_t bound = D.pairs[k].large;
        if (bound <= i) continue;
        const std::uint32_t g = static_cast<std::uint32_t>(std::gcd<std::uint64_t>(i, w));
        const std::uint32_t wp = w / g;  // class period along the row
        // Walk each j-residue class: the class of i*j is fixed by j mod wp
        // and the bit index advances by the constant i/g.
        for (std::uint32_t rho = 0; rho < wp; ++rho) {
            const std::uint32_t r = static_cast<std::uint32_t>((i * rho) % w);
            const std::uint64_t C = cfg.thresholds[r];
            std::uint64_t j = std::max(i, C / i + 1);
            j += (rho + wp - j % wp) % wp;
            if (j >= bound) continue;
            rec.constructed += (bound - 1 - j) / wp + 1;
            std::uint64_t idx = static_cast<std::uint64_t>(r) * stride + (i * j) / w;
            const std::uint64_t step = i / g;
            for (; j < bound; j += wp, idx += step) bits.set_unchecked(idx);
        }
    }

    if (detail) {
        detail->arithmetic.assign(w, 0);
        detail->marked.assign(w, 0);
    }
    std::uint64_t total = 0;
    for (std::uint32_t r = 0; r < w; ++r) {
        const std::uint64_t arith = arithmetic_run_count(cfg.thresholds[r], r, w);
        const std::uint64_t base = r * stride;
        const std::uint64_t marked = bits.popcount_words(base / 64, base / 64 + (n / w) / 64 + 1);
        if (detail) {
            detail->arithmetic[r] = arith;
            detail->marked[r] = marked;
        }
        total += arith + marked;
    }
    rec.delta = total;

    for (std::uint32_t r = 0; r < w; ++r) {
        const std::uint64_t base = r * stride;
        bits.reset_words(base / 64, base / 64 + (n / w) / 64 + 1);
    }
    return rec;
}

inline DeltaRecord delta_wheel(std::uint64_t n, const SpfTable& spf, std::uint32_t w,
                               WheelScratch& scratch, WheelBreakdown* detail = nullptr) {
    DivisorPairList D;
    divisor_pairs_into(n, spf, D);
    return delta_wheel(n, D, w, scratch, detail);
}

// Number of cell visits that perform a mark attempt; w = 0 means the plain
// algorithm (every shape cell is visited).
inline std::uint64_t constructed_count(std::uint64_t n, std::uint32_t w, const SpfTable& spf) {
    DivisorPairList D;
    divisor_pairs_into(n, spf, D);
    if (w == 0) {
        // Sum of the plain loop extents; no marking needed.
        std::uint64_t total = 0;
        const std::uint64_t row_end = D.last().small;
        std::size_t k = 0;
        for (std::uint64_t i = 1; i < row_end; ++i) {
            if (i == D.pairs[k].small) ++k;
            const std::uint64_t bound = D.pairs[k].large;
            if (bound > i) total += bound - i;
        }
        return total;
    }
    WheelScratch scratch(n);
    return delta_wheel(n, D, w, scratch).constructed;
}

}  // namespace multab
