// Direct construction of all table products with a bit array.
//
// m_direct marks every product ij (i <= j <= n) in a single n^2-bit vector
// and returns its weight. m_direct_segmented walks the product space
// [1, n^2] in fixed-size segments so the working set stays cache-sized and
// the whole space never has to exist at once; segments are independent, so
// they parallelise with a plain sum reduction.

#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "multab/parallel.hpp"

namespace multab {

namespace detail {

inline std::uint64_t isqrt_u64(std::uint64_t v) {
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

}  // namespace detail

// Hard cap for the in-core variant; larger products must go segmented.
inline constexpr std::uint64_t kDirectBitBudget = std::uint64_t{1} << 35;  // 4 GiB

// Exact M(n) = |{ij : 1 <= i,j <= n}| by explicit construction.
// Requires n^2 bits of working memory.
inline std::uint64_t m_direct(std::uint64_t n) {
    if (n == 0) throw std::domain_error("m_direct: n must be positive");
    const std::uint64_t bits = n * n;
    if (n > (std::uint64_t{1} << 31) || bits / n != n || bits > kDirectBitBudget)
        throw std::length_error(
            "m_direct: n^2 bits exceed the in-core budget; use the segmented variant");
    std::vector<std::uint64_t> words((bits + 63) / 64, 0);
    for (std::uint64_t i = 1; i <= n; ++i) {
        for (std::uint64_t j = i; j <= n; ++j) {
            const std::uint64_t b = i * j - 1;
            words[b >> 6] |= std::uint64_t{1} << (b & 63);
        }
    }
    std::uint64_t weight = 0;
    for (std::uint64_t w : words) weight += std::popcount(w);
    return weight;
}

// Segmentation of the product space [1, n^2] into `segments` pieces of
// `segment_bits` bits each. Boundaries are word-aligned.
struct SegmentPlan {
    std::uint64_t n = 0;
    std::uint64_t segment_bits = 0;
    std::uint64_t segments = 0;

    SegmentPlan(std::uint64_t n_, std::uint64_t segment_bits_) : n(n_) {
        if (n == 0) throw std::domain_error("SegmentPlan: n must be positive");
        segment_bits = std::max<std::uint64_t>(segment_bits_, 64);
        segment_bits = (segment_bits + 63) & ~std::uint64_t{63};
        if (segment_bits < n)
            throw std::invalid_argument("SegmentPlan: segment_bits must be >= n");
        const std::uint64_t total = n * n;
        segments = (total + segment_bits - 1) / segment_bits;
    }
};

// Same value as m_direct(n). Each segment [lo, hi) of the (zero-based)
// product bit space is marked independently: row i contributes multiples
// ij with j >= max(i, ceil((lo+1)/i)), keeping the i <= j symmetry; the
// final count is the sum of segment weights.
inline std::uint64_t m_direct_segmented(const SegmentPlan& plan, unsigned workers = 1,
                                        std::uint64_t* marks_out = nullptr) {
    const std::uint64_t n = plan.n;
    const std::uint64_t total_bits = n * n;
    std::atomic<std::uint64_t> weight{0};
    std::atomic<std::uint64_t> marks{0};
    std::atomic<std::uint64_t> next_seg{0};

    run_workers(std::max(1u, workers), [&](unsigned) {
        std::vector<std::uint64_t> buf(plan.segment_bits / 64);
        std::uint64_t local_weight = 0;
        std::uint64_t local_marks = 0;
        for (;;) {
            const std::uint64_t s = next_seg.fetch_add(1);
            if (s >= plan.segments) break;
            const std::uint64_t lo = s * plan.segment_bits;                  // bit index
            const std::uint64_t hi = std::min(lo + plan.segment_bits, total_bits);
            const std::uint64_t plo = lo + 1;  // products are bit+1
            const std::uint64_t phi = hi;      // inclusive product bound
            std::fill(buf.begin(), buf.begin() + (hi - lo + 63) / 64, 0);

            const std::uint64_t i_hi = std::min(n, detail::isqrt_u64(phi));
            std::uint64_t i_lo = (plo + n - 1) / n;  // need i*n >= plo
            if (i_lo < 1) i_lo = 1;
            for (std::uint64_t i = i_lo; i <= i_hi; ++i) {
                std::uint64_t j = std::max(i, (plo + i - 1) / i);
                const std::uint64_t j_end = std::min(n, phi / i);
                local_marks += (j <= j_end) ? (j_end - j + 1) : 0;
                for (std::uint64_t p = i * j; j <= j_end; ++j, p += i) {
                    const std::uint64_t b = p - 1 - lo;
                    buf[b >> 6] |= std::uint64_t{1} << (b & 63);
                }
            }
            const std::size_t nw = static_cast<std::size_t>((hi - lo + 63) / 64);
            for (std::size_t k = 0; k < nw; ++k) local_weight += std::popcount(buf[k]);
        }
        weight.fetch_add(local_weight);
        marks.fetch_add(local_marks);
    });

    if (marks_out) *marks_out = marks.load();
    return weight.load();
}

inline std::uint64_t m_direct_segmented(std::uint64_t n, std::uint64_t segment_bits,
                                        unsigned workers = 1) {
    return m_direct_segmented(SegmentPlan(n, segment_bits), workers);
}

// Test oracle: |{ij}| via a distinct-value set (sort + unique), no bit
// tricks shared with the paths above.
inline std::uint64_t brute_force_m(std::uint64_t n) {
    if (n == 0) throw std::domain_error("brute_force_m: n must be positive");
    if (n > 10000) throw std::length_error("brute_force_m: capped at n <= 10^4");
    std::vector<std::uint64_t> products;
    products.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
    for (std::uint64_t i = 1; i <= n; ++i)
        for (std::uint64_t j = i; j <= n; ++j) products.push_back(i * j);
    std::sort(products.begin(), products.end());
    return static_cast<std::uint64_t>(
        std::unique(products.begin(), products.end()) - products.begin());
}

}  // namespace multab
