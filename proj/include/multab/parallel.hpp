// Minimal worker-pool helpers. All algorithms here parallelise over
// disjoint index ranges with positional writes, so results do not depend
// on scheduling; only the worker count is part of the reproducibility
// contract (for the seeded Monte Carlo paths).

#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace multab {

// Default worker count: MULTAB_THREADS env var if set, else hardware.
inline unsigned default_thread_count() {
    if (const char* env = std::getenv("MULTAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Runs f(worker_id) on `workers` threads (worker 0 runs on the caller).
template <class F>
void run_workers(unsigned workers, F&& f) {
    if (workers <= 1) {
        f(0u);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back([&f, w] { f(w); });
    f(0u);
    for (auto& t : pool) t.join();
}

// Dynamic chunked loop over [begin, end): each claim hands a worker the
// half-open range [lo, hi). Work per index may be wildly uneven (shapes of
// smooth numbers), so chunks are claimed atomically rather than pre-split.
template <class F>
void parallel_chunks(std::uint64_t begin, std::uint64_t end, std::uint64_t chunk,
                     unsigned workers, F&& f) {
    if (begin >= end) return;
    if (chunk == 0) chunk = 1;
    std::atomic<std::uint64_t> next{begin};
    run_workers(workers, [&](unsigned worker_id) {
        for (;;) {
            const std::uint64_t lo = next.fetch_add(chunk);
            if (lo >= end) break;
            f(worker_id, lo, std::min(lo + chunk, end));
        }
    });
}

}  // namespace multab
