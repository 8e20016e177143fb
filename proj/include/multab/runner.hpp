// Windowed tabulate-to-CSV driver with checkpoint/resume.
//
// Deltas are computed in parallel inside fixed windows of k; finished
// windows are appended to the CSV in order, and a checkpoint (n_max, wheel,
// last completed k, running delta sum, durable byte offset) is written
// after each flush. Resuming truncates the CSV back to the last durable
// offset and continues from last_k + 1, so an interrupted-and-resumed run
// is byte-identical to an uninterrupted one.
//
// The incremental algorithm resumes without recomputation. The
// subquadratic tabulator has no sequential order to resume into, so it
// recomputes its delta array in memory and replays the output stream
// through the same windowed writer (the formats stay interchangeable).

#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>

#include "multab/chains.hpp"
#include "multab/checkpoint.hpp"
#include "multab/csvio.hpp"
#include "multab/tabulate.hpp"

namespace multab {

enum class TabAlgorithm { incremental, subquadratic };

// Crash-injection hook for resume tests: abort (by returning early) once
// the window containing `after_k` completes, either before or after its
// checkpoint is written.
enum class AbortPoint { none, before_checkpoint, after_checkpoint };

struct TabulateRunOptions {
    std::uint64_t n_max = 0;
    std::uint32_t wheel = 0;
    TabAlgorithm algorithm = TabAlgorithm::incremental;
    unsigned workers = 1;
    std::string out_path;         // "-" = stdout (no checkpointing)
    std::string checkpoint_path;  // empty = no checkpointing
    std::uint64_t checkpoint_every = 16384;
    AbortPoint abort_point = AbortPoint::none;
    std::uint64_t abort_after_k = 0;
};

enum class TabulateRunStatus { completed, aborted_by_hook };

inline TabulateRunStatus run_tabulation(const TabulateRunOptions& opt) {
    if (opt.n_max < 1) throw std::domain_error("tabulate: n_max must be positive");
    const bool to_stdout = opt.out_path.empty() || opt.out_path == "-";
    const bool checkpointing = !opt.checkpoint_path.empty();
    if (checkpointing && to_stdout)
        throw std::invalid_argument("tabulate: checkpointing requires a file output");

    std::uint64_t start_k = 1;
    std::uint64_t delta_sum = 0;

    std::FILE* out = nullptr;
    if (to_stdout) {
        out = stdout;
        std::fwrite(kCsvHeader, 1, std::strlen(kCsvHeader), out);
    } else if (checkpointing && std::filesystem::exists(opt.checkpoint_path)) {
        const TabulationCheckpoint cp = read_checkpoint(opt.checkpoint_path);
        if (cp.n_max != opt.n_max || cp.wheel != opt.wheel || cp.output_path != opt.out_path)
            throw std::invalid_argument("tabulate: stale checkpoint does not match this run");
        if (!std::filesystem::exists(opt.out_path) ||
            std::filesystem::file_size(opt.out_path) < cp.out_bytes)
            throw std::runtime_error("tabulate: output shorter than checkpoint offset");
        std::filesystem::resize_file(opt.out_path, cp.out_bytes);
        start_k = cp.last_k + 1;
        delta_sum = cp.delta_sum;
        out = std::fopen(opt.out_path.c_str(), "ab");
        if (!out) throw std::runtime_error("cannot append to " + opt.out_path);
    } else {
        out = std::fopen(opt.out_path.c_str(), "wb");
        if (!out) throw std::runtime_error("cannot open " + opt.out_path);
        std::fwrite(kCsvHeader, 1, std::strlen(kCsvHeader), out);
    }
    struct Closer {
        std::FILE* f;
        ~Closer() {
            if (f && f != stdout) std::fclose(f);
        }
    } closer{out};

    std::uint64_t out_bytes = to_stdout ? 0 : static_cast<std::uint64_t>(std::ftell(out));

    // Subquadratic: full array up front, then stream.
    TabulationResult precomputed;
    const bool use_precomputed = opt.algorithm == TabAlgorithm::subquadratic;
    std::unique_ptr<SpfTable> spf;
    std::vector<std::uint32_t> deltas;
    if (use_precomputed) {
        precomputed = tabulate_m_subquadratic(opt.n_max, opt.workers);
    } else {
        spf = std::make_unique<SpfTable>(opt.n_max);
        deltas.assign(opt.n_max + 1, 0);
    }

    const std::uint64_t window =
        checkpointing ? std::max<std::uint64_t>(1, opt.checkpoint_every)
                      : std::max<std::uint64_t>(4096, opt.checkpoint_every);
    std::string buf;
    for (std::uint64_t a = start_k; a <= opt.n_max; ) {
        const std::uint64_t b = std::min(a + window - 1, opt.n_max);
        buf.clear();
        if (use_precomputed) {
            for (std::uint64_t k = a; k <= b; ++k) {
                delta_sum += precomputed.deltas[k];
                append_csv_row(buf, k, precomputed.deltas[k], (k * k + k) / 2 - delta_sum);
            }
        } else {
            tabulate_delta_range(a, b, opt.wheel, opt.workers, *spf, deltas, nullptr);
            for (std::uint64_t k = a; k <= b; ++k) {
                delta_sum += deltas[k];
                append_csv_row(buf, k, deltas[k], (k * k + k) / 2 - delta_sum);
            }
        }
        std::fwrite(buf.data(), 1, buf.size(), out);
        std::fflush(out);
        out_bytes += buf.size();

        const bool abort_here = opt.abort_point != AbortPoint::none && b >= opt.abort_after_k;
        if (abort_here && opt.abort_point == AbortPoint::before_checkpoint)
            return TabulateRunStatus::aborted_by_hook;
        if (checkpointing) {
            TabulationCheckpoint cp;
            cp.n_max = opt.n_max;
            cp.wheel = opt.wheel;
            cp.last_k = b;
            cp.delta_sum = delta_sum;
            cp.out_bytes = out_bytes;
            cp.output_path = opt.out_path;
            write_checkpoint(opt.checkpoint_path, cp);
        }
        if (abort_here && opt.abort_point == AbortPoint::after_checkpoint)
            return TabulateRunStatus::aborted_by_hook;
        a = b + 1;
    }
    return TabulateRunStatus::completed;
}

}  // namespace multab
