// An integer carried together with its complete prime-power factorization.
// The product of prime^exponent always equals value; primes are strictly
// increasing; value 1 has an empty factor list.

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace multab {

using boost::multiprecision::cpp_int;

struct FactoredInt {
    cpp_int value = 1;
    std::vector<std::pair<cpp_int, std::uint32_t>> factors;  // (prime, exponent), ascending

    static FactoredInt one() { return FactoredInt{}; }

    static FactoredInt from_prime_power(const cpp_int& p, std::uint32_t e) {
        FactoredInt f;
        f.value = boost::multiprecision::pow(p, e);
        f.factors.emplace_back(p, e);
        return f;
    }

    // Multiply in a prime power, keeping the list sorted and merged.
    void mul_prime_power(const cpp_int& p, std::uint32_t e) {
        value *= boost::multiprecision::pow(p, e);
        auto it = std::lower_bound(factors.begin(), factors.end(), p,
                                   [](const auto& f, const cpp_int& v) { return f.first < v; });
        if (it != factors.end() && it->first == p)
            it->second += e;
        else
            factors.emplace(it, p, e);
    }

    // Reconstructs value from the factor list (consistency checks).
    cpp_int reconstruct() const {
        cpp_int prod = 1;
        for (const auto& [p, e] : factors) prod *= boost::multiprecision::pow(p, e);
        return prod;
    }

    void validate() const {
        if (reconstruct() != value)
            throw std::logic_error("FactoredInt: factors do not reproduce value");
        for (std::size_t i = 1; i < factors.size(); ++i)
            if (!(factors[i - 1].first < factors[i].first))
                throw std::logic_error("FactoredInt: primes not strictly increasing");
        if ((value == 1) != factors.empty())
            throw std::logic_error("FactoredInt: value 1 must have empty factors");
    }
};

// Product with merged factorizations (z = x * y for the product estimator).
inline FactoredInt merge_product(const FactoredInt& a, const FactoredInt& b) {
    FactoredInt out;
    out.value = a.value * b.value;
    out.factors.reserve(a.factors.size() + b.factors.size());
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        if (j == b.factors.size() ||
            (i < a.factors.size() && a.factors[i].first < b.factors[j].first)) {
            out.factors.push_back(a.factors[i++]);
        } else if (i == a.factors.size() || b.factors[j].first < a.factors[i].first) {
            out.factors.push_back(b.factors[j++]);
        } else {
            out.factors.emplace_back(a.factors[i].first,
                                     a.factors[i].second + b.factors[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

// Trial-division factorization for small values (the base of the sampler
// recursion; no primality tests involved).
inline FactoredInt factor_small(std::uint64_t v) {
    FactoredInt out;
    out.value = v;
    for (std::uint64_t p = 2; p * p <= v; p += (p == 2 ? 1 : 2)) {
        if (v % p) continue;
        std::uint32_t e = 0;
        while (v % p == 0) {
            v /= p;
            ++e;
        }
        out.factors.emplace_back(p, e);
    }
    if (v > 1) out.factors.emplace_back(v, 1);
    return out;
}

}  // namespace multab
