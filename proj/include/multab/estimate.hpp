// The two Monte Carlo estimators of M(n)/n^2.
//
// Bernoulli: z uniform on [1, n^2]; success iff z has a divisor in
// [z/n, n] (iff z appears in the table). Estimate S/T, variance
// p(1-p)/(T-1) by Bessel's correction.
//
// Product: z = x*y with x, y uniform on [1, n]; nu(z) = number of times z
// appears in the table = divisors of z in [z/n, n]. Estimate mean of
// 1/nu (unbiased since each z is drawn with probability nu/n^2), variance
// sum (1/nu_j - E)^2 / (T (T-1)).
//
// Divisor-range queries walk the divisor lattice with primes in descending
// order, pruning a branch when the running divisor already exceeds hi or
// cannot reach lo even with every remaining prime power; the Bernoulli
// query short-circuits on the first hit.

#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "multab/factored.hpp"
#include "multab/parallel.hpp"
#include "multab/rng.hpp"
#include "multab/sampler.hpp"

namespace multab {

inline cpp_int ceil_div(const cpp_int& a, const cpp_int& b) {
    if (b <= 0) throw std::domain_error("ceil_div: nonpositive divisor");
    return (a + b - 1) / b;
}

namespace detail {

struct DivisorRangeQuery {
    // primes descending with exponents and suffix products suffix[i] =
    // product of p_k^{e_k} for k >= i.
    std::vector<cpp_int> prime_pows;  // p^e per factor, descending primes
    std::vector<cpp_int> primes;
    std::vector<std::uint32_t> exps;
    std::vector<cpp_int> suffix;

    explicit DivisorRangeQuery(const FactoredInt& z) {
        const std::size_t n = z.factors.size();
        primes.resize(n);
        exps.resize(n);
        prime_pows.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& [p, e] = z.factors[n - 1 - i];  // descending
            primes[i] = p;
            exps[i] = e;
            prime_pows[i] = boost::multiprecision::pow(p, e);
        }
        suffix.assign(n + 1, 1);
        for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] * prime_pows[i];
    }

    template <bool kCountAll>
    std::uint64_t walk(std::size_t idx, const cpp_int& cur, const cpp_int& lo,
                       const cpp_int& hi) const {
        if (cur > hi) return 0;
        if (cur * suffix[idx] < lo) return 0;
        if (idx == primes.size()) return cur >= lo ? 1 : 0;
        std::uint64_t found = 0;
        cpp_int d = cur;
        for (std::uint32_t j = 0; j <= exps[idx]; ++j) {
            found += walk<kCountAll>(idx + 1, d, lo, hi);
            if (!kCountAll && found) return found;
            if (j < exps[idx]) d *= primes[idx];
        }
        return found;
    }
};

}  // namespace detail

// True iff some divisor of z lies in [lo, hi].
inline bool divisor_in_range(const FactoredInt& z, const cpp_int& lo, const cpp_int& hi) {
    if (lo < 1 || lo > hi) throw std::domain_error("divisor_in_range: bad interval");
    return detail::DivisorRangeQuery(z).walk<false>(0, 1, lo, hi) != 0;
}

// Exact count of divisors of z in [lo, hi]; equals nu(z) for
// lo = ceil(z/n), hi = n.
inline std::uint64_t count_divisors_in_range(const FactoredInt& z, const cpp_int& lo,
                                             const cpp_int& hi) {
    if (lo < 1 || lo > hi) throw std::domain_error("count_divisors_in_range: bad interval");
    return detail::DivisorRangeQuery(z).walk<true>(0, 1, lo, hi);
}

enum class EstimateMethod { bernoulli, product };

struct EstimateOptions {
    std::uint64_t trials = 0;
    std::uint64_t seed = 1;
    int mr_rounds = 30;
    unsigned workers = 1;
    SamplerKind sampler = SamplerKind::bach;
};

struct EstimateReport {
    bool exponent_form = false;  // n given as 2^k - 1
    unsigned n_exponent = 0;
    cpp_int n;
    EstimateMethod method = EstimateMethod::product;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;  // Bernoulli only
    double estimate = 0;
    double variance = 0;
    double sigma = 0;
    std::uint64_t seed = 0;
    int mr_rounds = 0;
    SamplerKind sampler = SamplerKind::bach;
    double wall_seconds = 0;
    SamplerStats sampler_stats;
};

namespace detail {

// Kahan-compensated accumulator; per-worker sums are merged in worker
// order so results depend only on (seed, workers).
struct Kahan {
    double sum = 0, c = 0;
    void add(double v) {
        const double y = v - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

struct TrialSums {
    std::uint64_t successes = 0;
    Kahan q;   // sum of 1/nu
    Kahan q2;  // sum of (1/nu)^2
    SamplerStats stats;
};

}  // namespace detail

inline EstimateReport run_estimate(EstimateMethod method, const cpp_int& n,
                                   const EstimateOptions& opt) {
    if (n < 1) throw std::domain_error("estimate: n must be positive");
    if (opt.trials < 2) throw std::domain_error("estimate: need at least T = 2 trials");
    const auto t0 = std::chrono::steady_clock::now();

    const unsigned workers = std::max(1u, opt.workers);
    const cpp_int n_sq = n * n;
    RandomStream master(opt.seed);
    std::vector<detail::TrialSums> partials(workers);

    run_workers(workers, [&](unsigned w) {
        RandomStream rng = master.split(w);
        detail::TrialSums& acc = partials[w];
        const std::uint64_t base = opt.trials / workers;
        const std::uint64_t mine = base + (w < opt.trials % workers ? 1 : 0);
        for (std::uint64_t t = 0; t < mine; ++t) {
            if (method == EstimateMethod::bernoulli) {
                const FactoredInt z =
                    draw_factored(opt.sampler, n_sq, rng, opt.mr_rounds, &acc.stats);
                if (divisor_in_range(z, ceil_div(z.value, n), n)) ++acc.successes;
            } else {
                const FactoredInt x =
                    draw_factored(opt.sampler, n, rng, opt.mr_rounds, &acc.stats);
                const FactoredInt y =
                    draw_factored(opt.sampler, n, rng, opt.mr_rounds, &acc.stats);
                const FactoredInt z = merge_product(x, y);
                const std::uint64_t nu =
                    count_divisors_in_range(z, ceil_div(z.value, n), n);
                const double q = 1.0 / static_cast<double>(nu);
                acc.q.add(q);
                acc.q2.add(q * q);
            }
        }
    });

    EstimateReport rep;
    rep.n = n;
    rep.method = method;
    rep.trials = opt.trials;
    rep.seed = opt.seed;
    rep.mr_rounds = opt.mr_rounds;
    rep.sampler = opt.sampler;

    const double T = static_cast<double>(opt.trials);
    if (method == EstimateMethod::bernoulli) {
        for (const auto& p : partials) {
            rep.successes += p.successes;
            rep.sampler_stats.merge(p.stats);
        }
        const double p_hat = static_cast<double>(rep.successes) / T;
        rep.estimate = p_hat;
        rep.variance = p_hat * (1.0 - p_hat) / (T - 1.0);
    } else {
        detail::Kahan q, q2;
        for (const auto& p : partials) {
            q.add(p.q.sum);
            q2.add(p.q2.sum);
            rep.sampler_stats.merge(p.stats);
        }
        const double mean = q.sum / T;
        rep.estimate = mean;
        rep.variance = std::max(0.0, (q2.sum - q.sum * q.sum / T) / (T * (T - 1.0)));
    }
    rep.sigma = std::sqrt(rep.variance);
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline EstimateReport bernoulli_estimate(const cpp_int& n, const EstimateOptions& opt) {
    return run_estimate(EstimateMethod::bernoulli, n, opt);
}

inline EstimateReport product_estimate(const cpp_int& n, const EstimateOptions& opt) {
    return run_estimate(EstimateMethod::product, n, opt);
}

struct ExactVariances {
    double p = 0;           // M(n) / n^2
    double e_nu_inv2 = 0;   // E(nu^-2) over table cells
    double v_product = 0;   // (E(nu^-2) - p^2) / T
    double v_bernoulli = 0; // p (1-p) / T
};

// Full-table enumeration of both theoretical variances; feasible for
// n <= 300.
inline ExactVariances exact_variance_check(std::uint64_t n, std::uint64_t T) {
    if (n < 1) throw std::domain_error("exact_variance_check: n must be positive");
    if (n > 300) throw std::length_error("exact_variance_check: capped at n <= 300");
    if (T < 1) throw std::domain_error("exact_variance_check: T must be positive");
    std::vector<std::uint32_t> counts(n * n + 1, 0);
    for (std::uint64_t x = 1; x <= n; ++x)
        for (std::uint64_t y = 1; y <= n; ++y) ++counts[x * y];
    std::uint64_t distinct = 0;
    double harmonic = 0;  // sum over distinct z of 1/nu(z)
    for (std::uint64_t z = 1; z <= n * n; ++z) {
        if (counts[z] == 0) continue;
        ++distinct;
        harmonic += 1.0 / static_cast<double>(counts[z]);
    }
    ExactVariances out;
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    out.p = static_cast<double>(distinct) / n2;
    out.e_nu_inv2 = harmonic / n2;
    out.v_product = (out.e_nu_inv2 - out.p * out.p) / static_cast<double>(T);
    out.v_bernoulli = out.p * (1.0 - out.p) / static_cast<double>(T);
    return out;
}

// Structured text serialization; stable field order.
inline std::string serialize_report(const EstimateReport& rep) {
    char buf[128];
    std::string out;
    if (rep.exponent_form) {
        std::snprintf(buf, sizeof buf, "n_exponent: %u\n", rep.n_exponent);
        out += buf;
    } else {
        out += "n: " + rep.n.str() + "\n";
    }
    out += std::string("method: ") +
           (rep.method == EstimateMethod::bernoulli ? "bernoulli" : "product") + "\n";
    std::snprintf(buf, sizeof buf, "trials: %llu\n",
                  static_cast<unsigned long long>(rep.trials));
    out += buf;
    std::snprintf(buf, sizeof buf, "estimate: %.10e\n", rep.estimate);
    out += buf;
    std::snprintf(buf, sizeof buf, "sigma: %.10e\n", rep.sigma);
    out += buf;
    std::snprintf(buf, sizeof buf, "seed: %llu\n", static_cast<unsigned long long>(rep.seed));
    out += buf;
    std::snprintf(buf, sizeof buf, "mr_rounds: %d\n", rep.mr_rounds);
    out += buf;
    out += std::string("sampler: ") + (rep.sampler == SamplerKind::bach ? "bach" : "kalai") +
           "\n";
    std::snprintf(buf, sizeof buf, "wall_time_seconds: %.3f\n", rep.wall_seconds);
    out += buf;
    return out;
}

}  // namespace multab
