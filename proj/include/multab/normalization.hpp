// Normalization of table densities by the slowly growing function
//
//   Phi(n) = (log n)^c (log log n)^(3/2),
//   c = 1 - (1 + log log 2)/log 2 = 0.086071...,
//
// against which n^2/M(n) is bounded above and below. Huge n are handled
// in log space (callers pass log n directly for n = 2^k - 1 with large k).

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "multab/csvio.hpp"
#include "multab/rng.hpp"

namespace multab {

inline double normalization_c() {
    static const double c = 1.0 - (1.0 + std::log(std::log(2.0))) / std::log(2.0);
    return c;
}

// Phi from log n; requires log n > 1 (i.e. n > e) for log log n > 0.
inline double phi_from_ln(double ln_n) {
    if (!(ln_n > 1.0)) throw std::domain_error("phi: log n must exceed 1");
    return std::pow(ln_n, normalization_c()) * std::pow(std::log(ln_n), 1.5);
}

inline double phi(std::uint64_t n) {
    if (n < 3) throw std::domain_error("phi: n must be >= 3");
    return phi_from_ln(std::log(static_cast<double>(n)));
}

inline double phi_big(const cpp_int& n) {
    if (n < 3) throw std::domain_error("phi: n must be >= 3");
    return phi_from_ln(log_cpp_int(n));
}

// Phi(2^k - 1) in exponent form, log n = k log 2.
inline double phi_exponent2(double k) { return phi_from_ln(k * std::log(2.0)); }

// (n^2 / M) / Phi(n) from log n and the density ratio M / n^2.
inline double normalized_ratio_from_ln(double ln_n, double m_over_n2) {
    if (!(m_over_n2 > 0)) throw std::domain_error("normalized_ratio: ratio must be positive");
    return (1.0 / m_over_n2) / phi_from_ln(ln_n);
}

inline double normalized_ratio(std::uint64_t n, double m_over_n2) {
    return normalized_ratio_from_ln(std::log(static_cast<double>(n)), m_over_n2);
}

// The crossover of Remark-style derivative dominance: the (log log n)^(3/2)
// factor varies faster than (log n)^c exactly while log n < exp(3/(2c));
// returned as log2 of the boundary n.
inline double phi_crossover_log2() {
    return std::exp(3.0 / (2.0 * normalization_c())) / std::log(2.0);
}

// Analysis report over a tabulation CSV: per-k density and, optionally,
// the normalized column. Reals are printed to 4 decimals; k below the Phi
// domain get an empty normalized field.
inline std::string generate_report(const std::vector<CsvRow>& rows, bool normalized) {
    std::string out = normalized ? "k,M_over_k2,normalized\n" : "k,M_over_k2\n";
    char buf[96];
    for (const CsvRow& row : rows) {
        const double k = static_cast<double>(row.k);
        const double ratio = static_cast<double>(row.m) / (k * k);
        if (!normalized) {
            std::snprintf(buf, sizeof buf, "%llu,%.4f\n",
                          static_cast<unsigned long long>(row.k), ratio);
        } else if (row.k >= 3) {
            std::snprintf(buf, sizeof buf, "%llu,%.4f,%.4f\n",
                          static_cast<unsigned long long>(row.k), ratio,
                          normalized_ratio(row.k, ratio));
        } else {
            std::snprintf(buf, sizeof buf, "%llu,%.4f,\n",
                          static_cast<unsigned long long>(row.k), ratio);
        }
        out += buf;
    }
    return out;
}

}  // namespace multab
