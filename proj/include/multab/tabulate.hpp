// Tabulation of M(k) for all k <= n_max through the delta identity
//
//   M(k) = (k^2 + k)/2 - sum_{j <= k} delta(j).
//
// Workers claim chunks of k; each owns private scratch, so the delta array
// is filled positionally and the result is identical for any worker count.

#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "multab/bitvec.hpp"
#include "multab/delta.hpp"
#include "multab/parallel.hpp"
#include "multab/spf.hpp"
#include "multab/wheel.hpp"

namespace multab {

struct TabulationResult {
    std::uint64_t n_max = 0;
    std::vector<std::uint32_t> deltas;        // index k, 1..n_max; [0] unused
    std::vector<std::uint64_t> m_values;      // index k, 1..n_max; M(k)
    std::vector<std::uint64_t> visit_counts;  // constructed-work per k (diagnostic)

    std::uint64_t total_visits() const {
        std::uint64_t t = 0;
        for (std::uint64_t v : visit_counts) t += v;
        return t;
    }
    // Constructed work accumulated over k <= n (for growth-trend reports).
    std::uint64_t visits_through(std::uint64_t n) const {
        std::uint64_t t = 0;
        for (std::uint64_t k = 1; k <= n && k < visit_counts.size(); ++k)
            t += visit_counts[k];
        return t;
    }
};

// Fills deltas[k] and visit_counts[k] for k in [k_begin, k_end]; shared by
// the in-memory tabulator and the checkpointing runner. wheel = 0 runs the
// plain delta; nonzero moduli fall back automatically where degenerate.
inline void tabulate_delta_range(std::uint64_t k_begin, std::uint64_t k_end,
                                 std::uint32_t wheel, unsigned workers, const SpfTable& spf,
                                 std::vector<std::uint32_t>& deltas,
                                 std::vector<std::uint64_t>* visit_counts) {
    if (wheel != 0 && !is_supported_wheel(wheel))
        throw std::invalid_argument("tabulate: unsupported wheel modulus");
    const std::uint64_t n_max = spf.limit();
    if (k_end > n_max) throw std::length_error("tabulate: range exceeds sieve limit");

    struct WorkerState {
        explicit WorkerState(std::uint64_t n, bool with_wheel)
            : plain(n + 1), wheel_scratch(with_wheel ? n : 1) {}
        BitVector plain;
        WheelScratch wheel_scratch;
        DivisorPairList D;
    };

    std::vector<std::unique_ptr<WorkerState>> states(workers);
    parallel_chunks(k_begin, k_end + 1, 256, workers,
                    [&](unsigned worker, std::uint64_t lo, std::uint64_t hi) {
                        auto& st = states[worker];
                        if (!st) st = std::make_unique<WorkerState>(n_max, wheel != 0);
                        for (std::uint64_t k = lo; k < hi; ++k) {
                            divisor_pairs_into(k, spf, st->D);
                            DeltaRecord rec;
                            if (wheel == 0) {
                                rec = delta(k, st->D, st->plain);
                                st->plain.reset_below(k);
                            } else {
                                rec = delta_wheel(k, st->D, wheel, st->wheel_scratch);
                            }
                            deltas[k] = static_cast<std::uint32_t>(rec.delta);
                            if (visit_counts)
                                (*visit_counts)[k] = rec.constructed;
                        }
                    });
}

// Prefix pass turning per-k deltas into M(k) by the identity above.
inline void fill_m_values(TabulationResult& r) {
    r.m_values.assign(r.deltas.size(), 0);
    std::uint64_t delta_sum = 0;
    for (std::uint64_t k = 1; k < r.deltas.size(); ++k) {
        delta_sum += r.deltas[k];
        r.m_values[k] = (k * k + k) / 2 - delta_sum;
    }
}

inline TabulationResult tabulate_m(std::uint64_t n_max, std::uint32_t wheel = 0,
                                   unsigned workers = 1) {
    if (n_max < 1) throw std::domain_error("tabulate_m: n_max must be positive");
    const SpfTable spf(n_max);
    TabulationResult r;
    r.n_max = n_max;
    r.deltas.assign(n_max + 1, 0);
    r.visit_counts.assign(n_max + 1, 0);
    tabulate_delta_range(1, n_max, wheel, workers, spf, r.deltas, &r.visit_counts);
    fill_m_values(r);
    return r;
}

}  // namespace multab
