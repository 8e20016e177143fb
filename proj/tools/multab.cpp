// multab: exact and Monte Carlo counting of distinct products in an n x n
// multiplication table.
//
//   exact     one M(n) value (direct bit-array, incremental, subquadratic)
//   tabulate  CSV of k,delta,M for all k <= n, resumable via checkpoints
//   delta     one delta(n) value
//   estimate  Bernoulli or product Monte Carlo estimate of M(n)/n^2
//   report    density and normalized columns from a tabulation CSV
//   shape     SVG rendering of a delta computation's shape

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "multab/chains.hpp"
#include "multab/direct.hpp"
#include "multab/estimate.hpp"
#include "multab/normalization.hpp"
#include "multab/parallel.hpp"
#include "multab/runner.hpp"
#include "multab/svg_shape.hpp"
#include "multab/tabulate.hpp"

namespace {

using namespace multab;

std::uint64_t exact_value(std::uint64_t n, const std::string& algorithm,
                          std::uint64_t segment_bits, unsigned threads) {
    if (algorithm == "direct") {
        if (segment_bits != 0) return m_direct_segmented(SegmentPlan(n, segment_bits), threads);
        if (n * n <= (std::uint64_t{1} << 31)) return m_direct(n);
        // Too large for one in-core bit array; default to cache-sized segments.
        const std::uint64_t auto_bits = std::max<std::uint64_t>(n, std::uint64_t{1} << 26);
        return m_direct_segmented(SegmentPlan(n, auto_bits), threads);
    }
    if (algorithm == "incremental") {
        const std::uint32_t wheel = n >= (1 << 16) ? 60 : 0;
        return tabulate_m(n, wheel, threads).m_values[n];
    }
    if (algorithm == "subquadratic") return tabulate_m_subquadratic(n, threads).m_values[n];
    throw CLI::ValidationError("--algorithm", "unknown algorithm: " + algorithm);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distinct products in multiplication tables"};
    app.require_subcommand(1);
    const unsigned default_threads = default_thread_count();

    // ---- exact ----
    auto* exact = app.add_subcommand("exact", "compute M(n) exactly");
    std::uint64_t exact_n = 0;
    std::string exact_alg = "direct";
    std::uint64_t exact_segment_bits = 0;
    unsigned exact_threads = default_threads;
    exact->add_option("--n", exact_n, "table size")->required();
    exact->add_option("--algorithm", exact_alg, "direct|incremental|subquadratic")
        ->check(CLI::IsMember({"direct", "incremental", "subquadratic"}));
    exact->add_option("--segment-bits", exact_segment_bits,
                      "bits per segment for the direct algorithm");
    exact->add_option("--threads", exact_threads, "worker threads")->envname("MULTAB_THREADS");

    // ---- tabulate ----
    auto* tab = app.add_subcommand("tabulate", "tabulate k,delta,M for all k <= n");
    TabulateRunOptions tab_opt;
    std::string tab_alg = "incremental";
    tab_opt.out_path = "-";
    tab->add_option("--n", tab_opt.n_max, "tabulate up to this n")->required();
    tab->add_option("--wheel", tab_opt.wheel, "wheel modulus 0|1|2|6|12|60")
        ->check(CLI::IsMember({"0", "1", "2", "6", "12", "60"}));
    tab->add_option("--algorithm", tab_alg, "incremental|subquadratic")
        ->check(CLI::IsMember({"incremental", "subquadratic"}));
    tab->add_option("--out", tab_opt.out_path, "output CSV path, or - for stdout");
    tab->add_option("--checkpoint", tab_opt.checkpoint_path, "checkpoint file path");
    tab->add_option("--checkpoint-every", tab_opt.checkpoint_every,
                    "values per checkpoint window");
    tab->add_option("--threads", tab_opt.workers, "worker threads")->envname("MULTAB_THREADS");

    // ---- delta ----
    auto* del = app.add_subcommand("delta", "compute delta(n)");
    std::uint64_t delta_n = 0;
    std::uint32_t delta_wheel_mod = 0;
    del->add_option("--n", delta_n, "argument of delta")->required();
    del->add_option("--wheel", delta_wheel_mod, "wheel modulus 0|1|2|6|12|60")
        ->check(CLI::IsMember({"0", "1", "2", "6", "12", "60"}));

    // ---- estimate ----
    auto* est = app.add_subcommand("estimate", "Monte Carlo estimate of M(n)/n^2");
    std::uint64_t est_n = 0;
    unsigned est_exponent = 0;
    std::string est_method;
    std::string est_sampler = "bach";
    EstimateOptions est_opt;
    est_opt.workers = default_threads;
    auto* est_n_opt = est->add_option("--n", est_n, "table size");
    auto* est_exp_opt =
        est->add_option("--n-exponent", est_exponent, "table size as 2^k - 1, give k");
    est_n_opt->excludes(est_exp_opt);
    est->add_option("--method", est_method, "bernoulli|product")
        ->check(CLI::IsMember({"bernoulli", "product"}));
    est->add_option("--trials", est_opt.trials, "number of trials (>= 2)")->required();
    est->add_option("--sampler", est_sampler, "bach|kalai")
        ->check(CLI::IsMember({"bach", "kalai"}));
    est->add_option("--seed", est_opt.seed, "random seed");
    est->add_option("--mr-rounds", est_opt.mr_rounds, "Miller-Rabin rounds");
    est->add_option("--threads", est_opt.workers, "worker threads")->envname("MULTAB_THREADS");

    // ---- report ----
    auto* rep = app.add_subcommand("report", "derived columns from a tabulation CSV");
    std::string rep_input;
    bool rep_normalized = false;
    rep->add_option("--input", rep_input, "tabulation CSV path")->required();
    rep->add_flag("--normalized", rep_normalized, "append the (k^2/M)/Phi(k) column");

    // ---- shape ----
    auto* shp = app.add_subcommand("shape", "render a delta shape as SVG");
    std::uint64_t shape_n = 0;
    std::uint32_t shape_wheel = 0;
    std::string shape_out;
    shp->add_option("--n", shape_n, "argument of delta")->required();
    shp->add_option("--wheel", shape_wheel, "wheel modulus 0|1|2|6|12|60")
        ->check(CLI::IsMember({"0", "1", "2", "6", "12", "60"}));
    shp->add_option("--out", shape_out, "output SVG path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*exact) {
            std::cout << exact_value(exact_n, exact_alg, exact_segment_bits, exact_threads)
                      << "\n";
        } else if (*tab) {
            tab_opt.algorithm = tab_alg == "subquadratic" ? TabAlgorithm::subquadratic
                                                          : TabAlgorithm::incremental;
            if (const char* hook = std::getenv("MULTAB_TEST_ABORT_AFTER_K")) {
                tab_opt.abort_point = AbortPoint::after_checkpoint;
                tab_opt.abort_after_k = std::strtoull(hook, nullptr, 10);
            }
            const auto status = run_tabulation(tab_opt);
            if (status == TabulateRunStatus::aborted_by_hook) return 17;
        } else if (*del) {
            const SpfTable spf(delta_n);
            if (delta_wheel_mod == 0) {
                BitVector scratch(delta_n + 1);
                std::cout << delta(delta_n, spf, scratch).delta << "\n";
            } else {
                WheelScratch scratch(delta_n);
                std::cout << delta_wheel(delta_n, spf, delta_wheel_mod, scratch).delta << "\n";
            }
        } else if (*est) {
            EstimateReport report;
            cpp_int n;
            if (est_exp_opt->count()) {
                n = (cpp_int(1) << est_exponent) - 1;
                report.exponent_form = true;
                report.n_exponent = est_exponent;
            } else if (est_n_opt->count()) {
                n = est_n;
            } else {
                throw CLI::ValidationError("estimate", "need --n or --n-exponent");
            }
            EstimateMethod method;
            if (!est_method.empty()) {
                method = est_method == "bernoulli" ? EstimateMethod::bernoulli
                                                   : EstimateMethod::product;
            } else {
                // Product preferred while space allows; Bernoulli at huge sizes.
                method = (report.exponent_form && report.n_exponent >= 1000000)
                             ? EstimateMethod::bernoulli
                             : EstimateMethod::product;
            }
            est_opt.sampler = est_sampler == "kalai" ? SamplerKind::kalai : SamplerKind::bach;
            EstimateReport run = run_estimate(method, n, est_opt);
            run.exponent_form = report.exponent_form;
            run.n_exponent = report.n_exponent;
            std::cout << serialize_report(run);
        } else if (*rep) {
            const auto rows = read_tabulation_csv(rep_input);
            std::cout << generate_report(rows, rep_normalized);
        } else if (*shp) {
            const SpfTable spf(shape_n);
            const std::string svg = render_shape(shape_n, shape_wheel, spf);
            std::ofstream out(shape_out, std::ios::trunc);
            if (!out) throw std::runtime_error("cannot write " + shape_out);
            out << svg;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
