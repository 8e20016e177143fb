// Seedable, splittable random stream. All randomness in the library flows
// through this; there is no global generator. mt19937_64 is fully
// specified by the standard and the integer draws below avoid
// implementation-defined distributions, so seeded runs reproduce across
// platforms.

#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace multab {

using boost::multiprecision::cpp_int;

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}
}  // namespace detail

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed), eng_(detail::splitmix64(seed)) {}

    // Independent child stream; used to give each worker its own stream
    // derived from the master seed.
    RandomStream split(std::uint64_t salt) const {
        return RandomStream(detail::splitmix64(seed_ ^ (salt * 0xD1B54A32D192ED03ull)));
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return eng_(); }

    // Uniform double in [0, 1), 53 random bits.
    double next_unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform on [lo, hi], inclusive, by masked rejection.
    std::uint64_t uniform_u64(std::uint64_t lo, std::uint64_t hi) {
        if (lo > hi) throw std::invalid_argument("uniform_u64: empty range");
        const std::uint64_t span = hi - lo;  // draws from [0, span]
        if (span == 0) return lo;
        if (span == ~std::uint64_t{0}) return eng_();
        const int bits = std::bit_width(span);
        const std::uint64_t mask = (bits == 64) ? ~std::uint64_t{0}
                                                : ((std::uint64_t{1} << bits) - 1);
        for (;;) {
            const std::uint64_t v = eng_() & mask;
            if (v <= span) return lo + v;
        }
    }

    // Uniform cpp_int on [lo, hi], inclusive: assemble bit_length(span)
    // random bits from 64-bit words, reject values above the span.
    cpp_int uniform_int(const cpp_int& lo, const cpp_int& hi) {
        if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
        static const cpp_int u64_max{~std::uint64_t{0}};
        if (lo >= 0 && hi <= u64_max)
            return cpp_int(
                uniform_u64(lo.convert_to<std::uint64_t>(), hi.convert_to<std::uint64_t>()));
        const cpp_int span = hi - lo;
        if (span == 0) return lo;
        const std::size_t bits = msb(span) + 1;  // boost msb: index of top bit
        const std::size_t words = (bits + 63) / 64;
        const unsigned top_shift = static_cast<unsigned>(words * 64 - bits);
        for (;;) {
            cpp_int v = 0;
            for (std::size_t w = 0; w < words; ++w) {
                v <<= 64;
                v |= cpp_int(eng_());
            }
            v >>= top_shift;
            if (v <= span) return lo + v;
        }
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

// log of a positive cpp_int in doubles: exact enough (top 64 bits of the
// mantissa) for acceptance ratios on numbers far beyond double range.
inline double log_cpp_int(const cpp_int& v) {
    if (v <= 0) throw std::domain_error("log_cpp_int: nonpositive");
    const std::size_t bits = msb(v) + 1;
    if (bits <= 63) return std::log(static_cast<double>(v.convert_to<std::uint64_t>()));
    const unsigned shift = static_cast<unsigned>(bits - 63);
    const double top = static_cast<double>((v >> shift).convert_to<std::uint64_t>());
    return std::log(top) + shift * 0.6931471805599453094;
}

}  // namespace multab
