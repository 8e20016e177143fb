// Fixed-length packed bit vector. This is the marking array used by all
// of the product-counting algorithms: bits stand for product values, the
// Hamming weight is the count of distinct products seen.
//
// Invariants:
//   - bits at positions >= size() are always zero (the tail word is masked)
//   - the running weight cache, while valid, equals a full popcount rescan
//
// The weight cache is maintained only while every mutation goes through
// set_and_report() or reset(); a plain set() invalidates it.

#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace multab {

class BitVector {
public:
    BitVector() = default;

    explicit BitVector(std::uint64_t nbits)
        : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    std::uint64_t size() const { return nbits_; }
    std::size_t word_count() const { return words_.size(); }

    bool test(std::uint64_t i) const {
        range_check(i);
        return test_unchecked(i);
    }

    // Plain set; drops the weight cache.
    void set(std::uint64_t i) {
        range_check(i);
        cache_valid_ = false;
        set_unchecked(i);
    }

    // Combined test-and-set. Returns the prior state of the bit; the weight
    // cache (if still valid) is incremented only on a 0 -> 1 transition.
    bool set_and_report(std::uint64_t i) {
        range_check(i);
        std::uint64_t& w = words_[i >> 6];
        const std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (w & m) return true;
        w |= m;
        if (cache_valid_) ++cached_weight_;
        return false;
    }

    // Authoritative weight: full popcount scan.
    std::uint64_t weight() const {
        std::uint64_t total = 0;
        for (std::uint64_t w : words_) total += std::popcount(w);
        return total;
    }

    // Popcount restricted to bits [0, nbits), nbits <= size().
    std::uint64_t weight_below(std::uint64_t nbits) const {
        assert(nbits <= nbits_);
        const std::uint64_t full = nbits >> 6;
        std::uint64_t total = 0;
        for (std::uint64_t k = 0; k < full; ++k) total += std::popcount(words_[k]);
        if (nbits & 63)
            total += std::popcount(words_[full] & ((std::uint64_t{1} << (nbits & 63)) - 1));
        return total;
    }

    std::optional<std::uint64_t> cached_weight() const {
        if (!cache_valid_) return std::nullopt;
        return cached_weight_;
    }

    // Zero every word; O(size/64). Re-arms the weight cache.
    void reset() {
        std::fill(words_.begin(), words_.end(), 0);
        cached_weight_ = 0;
        cache_valid_ = true;
    }

    // Zero only the words covering bits [0, nbits). Callers that know their
    // marks never passed nbits use this to avoid rescanning a large vector.
    void reset_below(std::uint64_t nbits) {
        assert(nbits <= nbits_);
        const std::size_t nwords = static_cast<std::size_t>((nbits + 63) >> 6);
        std::fill(words_.begin(), words_.begin() + nwords, 0);
        cached_weight_ = 0;
        cache_valid_ = true;
    }

    // Unchecked fast paths for loops that have already validated the range.
    // These do not maintain the weight cache; call invalidate_cache() once
    // before a marking loop (reset()/reset_below() re-arm it).
    void invalidate_cache() { cache_valid_ = false; }

    bool test_unchecked(std::uint64_t i) const {
        assert(i < nbits_);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set_unchecked(std::uint64_t i) {
        assert(i < nbits_);
        words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
    bool set_and_report_unchecked(std::uint64_t i) {
        assert(i < nbits_);
        std::uint64_t& w = words_[i >> 6];
        const std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (w & m) return true;
        w |= m;
        return false;
    }

    // Popcount of the word range [lo_word, hi_word).
    std::uint64_t popcount_words(std::uint64_t lo_word, std::uint64_t hi_word) const {
        hi_word = std::min<std::uint64_t>(hi_word, words_.size());
        std::uint64_t total = 0;
        for (std::uint64_t k = lo_word; k < hi_word; ++k) total += std::popcount(words_[k]);
        return total;
    }

    // Zero the word range [lo_word, hi_word); drops the weight cache.
    void reset_words(std::uint64_t lo_word, std::uint64_t hi_word) {
        hi_word = std::min<std::uint64_t>(hi_word, words_.size());
        cache_valid_ = false;
        for (std::uint64_t k = lo_word; k < hi_word; ++k) words_[k] = 0;
    }

    std::span<const std::uint64_t> words() const { return words_; }

private:
    void range_check(std::uint64_t i) const {
        if (i >= nbits_) throw std::out_of_range("BitVector: index out of range");
    }

    std::uint64_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
    std::uint64_t cached_weight_ = 0;
    bool cache_valid_ = true;
};

}  // namespace multab
