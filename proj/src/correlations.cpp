#include "rsm/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rsm/factored.hpp"
#include "rsm/ramanujan.hpp"
#include "rsm/util.hpp"

namespace rsm {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void CorrelationSpec::validate() const {
    if (!f || !g_prime) throw std::invalid_argument("CorrelationSpec: f and g' required");
    if (Q < 1 || N < 1 || Q > N)
        throw std::invalid_argument("CorrelationSpec: need 1 <= Q <= N");
}

Value correlate(const CorrelationSpec& spec, int64_t a) {
    spec.validate();
    if (a < 1) throw std::invalid_argument("correlate: a must be >= 1");
    std::vector<Value> gp(spec.Q + 1, Value(0));
    for (int64_t q = 1; q <= spec.Q; ++q) gp[q] = spec.g_prime(q);
    Value sum(0);
    for (int64_t n = 1; n <= spec.N; ++n) {
        Value fn = spec.f(n);
        if (fn.is_zero()) continue;
        Value g(0);
        for (int64_t q = 1; q <= spec.Q; ++q)
            if ((n + a) % q == 0) g += gp[q];
        sum += fn * g;
    }
    return sum;
}

double lambda_truncated(int64_t N, int64_t m) {
    if (m < 1) throw std::invalid_argument("lambda_truncated: m must be >= 1");
    Kahan acc;
    for (int64_t d : divisors(factor(m))) {
        if (d > N || d == 1) continue;
        int64_t mu = mobius(d);
        if (mu != 0) acc.add(-static_cast<double>(mu) * std::log(static_cast<double>(d)));
    }
    return acc.value();
}

Value g_hat(const ArithmeticFunction& g_prime, int64_t Q, int64_t q) {
    if (q < 1) throw std::invalid_argument("g_hat: q must be >= 1");
    Value sum(0);
    for (int64_t d = q; d <= Q; d += q) sum += g_prime(d) / Value(d);
    return sum;
}

Value reef_rhs(const CorrelationSpec& spec, int64_t a) {
    spec.validate();
    if (a < 1) throw std::invalid_argument("reef_rhs: a must be >= 1");
    Value total(0);
    for (int64_t q = 1; q <= spec.Q; ++q) {
        Value ghat = g_hat(spec.g_prime, spec.Q, q);
        if (ghat.is_zero()) continue;
        CsumFixedModulus cq(q);
        Value fsum(0);
        for (int64_t n = 1; n <= spec.N; ++n) {
            int64_t w = cq(n);
            if (w != 0) fsum += spec.f(n) * Value(w);
        }
        total += ghat / Value(totient(q)) * fsum * Value(cq(a));
    }
    return total;
}

Value error_term(const CorrelationSpec& spec, int64_t a) {
    return correlate(spec, a) - reef_rhs(spec, a);
}

Complex exp_sum(const ArithmeticFunction& f, int64_t N, int64_t j, int64_t q) {
    if (q < 1 || j < 0 || j >= q)
        throw std::invalid_argument("exp_sum: need q >= 1 and 0 <= j < q");
    KahanComplex acc;
    for (int64_t n = 1; n <= N; ++n) {
        Value fn = f(n);
        if (fn.is_zero()) continue;
        int64_t r = n % q * j % q;
        acc.add(fn.to_complex() *
                std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(q)));
    }
    return acc.value();
}

double singular_series(int64_t two_k, SingularSeriesMethod method, int64_t bound) {
    if (two_k < 2 || two_k % 2 != 0)
        throw std::invalid_argument("singular_series: shift must be a positive even integer");
    if (bound < 1000) throw std::invalid_argument("singular_series: bound too small");
    if (method == SingularSeriesMethod::product) {
        double prod = 2.0;
        for (int64_t p : primes_up_to(bound)) {
            if (p == 2) continue;
            double pm1 = static_cast<double>(p - 1);
            if (two_k % p == 0)
                prod *= 1.0 + 1.0 / pm1;
            else
                prod *= 1.0 - 1.0 / (pm1 * pm1);
        }
        return prod;
    }
    // Ramanujan-series form: sum_q mu^2(q) c_q(2k) / phi(q)^2.
    auto sieve = default_sieve();
    if (bound > sieve->bound) sieve = SieveTables::cached(bound);
    Kahan acc;
    for (int64_t q = 1; q <= bound; ++q) {
        if (sieve->mu[q] == 0) continue;
        int64_t g = std::gcd(q, two_k);
        int64_t m = q / g;
        if (sieve->mu[m] == 0) continue;
        double cq = static_cast<double>(sieve->mu[m]) * sieve->phi[q] / sieve->phi[m];
        acc.add(cq / (static_cast<double>(sieve->phi[q]) * sieve->phi[q]));
    }
    return acc.value();
}

std::vector<HlRow> hl_experiment(int64_t N, const std::vector<int64_t>& shifts,
                                 int64_t singular_bound, int threads) {
    if (N < 100) throw std::invalid_argument("hl_experiment: N too small");
    int64_t max_shift = 0;
    for (int64_t s : shifts) {
        if (s < 2 || s % 2 != 0)
            throw std::invalid_argument("hl_experiment: shifts must be positive even integers");
        max_shift = std::max(max_shift, s);
    }

    // Lambda on [1..N+max_shift] straight from the prime powers.
    std::vector<double> lam(N + max_shift + 1, 0.0);
    for (int64_t p : primes_up_to(N + max_shift)) {
        double lp = std::log(static_cast<double>(p));
        for (int64_t pk = p; pk <= N + max_shift; pk *= p) {
            lam[pk] = lp;
            if (pk > (N + max_shift) / p) break;
        }
    }

    std::vector<HlRow> rows;
    for (int64_t s : shifts) {
        HlRow row;
        row.shift = s;
        constexpr int64_t kBlock = 1 << 14;
        int64_t nblocks = (N + kBlock - 1) / kBlock;
        std::vector<double> block_sums(nblocks, 0.0);
        parallel_blocks(N, threads, kBlock, [&](int64_t b, int64_t lo, int64_t hi) {
            Kahan acc;
            for (int64_t n = lo + 1; n <= hi; ++n)
                if (lam[n] != 0.0 && lam[n + s] != 0.0) acc.add(lam[n] * lam[n + s]);
            block_sums[b] = acc.value();
        });
        Kahan corr;
        for (double v : block_sums) corr.add(v);
        row.corr_lambda = corr.value();

        // Lambda_N differs from Lambda only past N: patch the boundary terms.
        Kahan patch;
        for (int64_t n = std::max<int64_t>(1, N - s + 1); n <= N; ++n) {
            if (lam[n] == 0.0) continue;
            if (n + s > N) patch.add(lam[n] * (lambda_truncated(N, n + s) - lam[n + s]));
        }
        row.corr_lambda_trunc = row.corr_lambda + patch.value();

        double sing = singular_series(s, SingularSeriesMethod::product, singular_bound);
        row.singular_times_n = sing * static_cast<double>(N);
        row.ratio = row.corr_lambda / row.singular_times_n;
        row.trunc_gap = std::abs(row.corr_lambda - row.corr_lambda_trunc);
        double comparator = static_cast<double>(s) * std::log(static_cast<double>(N)) *
                            std::log(static_cast<double>(N + s));
        row.trunc_gap_ratio = row.trunc_gap / comparator;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace rsm
