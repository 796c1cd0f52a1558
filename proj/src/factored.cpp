#include "rsm/factored.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "rsm/util.hpp"

namespace rsm {

int FactoredInteger::valuation(int64_t p) const {
    for (const auto& [q, e] : factors)
        if (q == p) return e;
    return 0;
}

int64_t FactoredInteger::squarefree_kernel() const {
    int64_t k = 1;
    for (const auto& [p, e] : factors) k *= p;
    return k;
}

bool FactoredInteger::squarefree() const {
    for (const auto& [p, e] : factors)
        if (e > 1) return false;
    return true;
}

int FactoredInteger::mobius() const {
    if (!squarefree()) return 0;
    return (factors.size() % 2 == 0) ? 1 : -1;
}

int64_t FactoredInteger::totient() const {
    int64_t t = 1;
    for (const auto& [p, e] : factors) t *= ipow(p, e - 1) * (p - 1);
    return t;
}

namespace {

int64_t pollard_rho(int64_t n) {
    if (n % 2 == 0) return 2;
    uint64_t un = static_cast<uint64_t>(n);
    for (uint64_t c = 1;; ++c) {
        uint64_t x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (mulmod_u64(x, x, un) + c) % un;
            y = (mulmod_u64(y, y, un) + c) % un;
            y = (mulmod_u64(y, y, un) + c) % un;
            d = std::gcd(x > y ? x - y : y - x, un);
        }
        if (d != un) return static_cast<int64_t>(d);
    }
}

void factor_large(int64_t n, std::vector<std::pair<int64_t, int>>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.emplace_back(n, 1);
        return;
    }
    int64_t d = pollard_rho(n);
    factor_large(d, out);
    factor_large(n / d, out);
}

}  // namespace

FactoredInteger Factorizer::operator()(int64_t n) const {
    if (n < 1) throw std::invalid_argument("factor: n must be positive");
    FactoredInteger f;
    f.n = n;
    int64_t m = n;
    if (tables_ && m <= tables_->bound) {
        while (m > 1) {
            int64_t p = tables_->spf[m];
            int e = 0;
            while (m % p == 0) m /= p, ++e;
            f.factors.emplace_back(p, e);
        }
        return f;
    }
    // Strip small primes first, then rho on the remainder.
    for (int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) m /= p, ++e;
            f.factors.emplace_back(p, e);
        }
    }
    std::vector<std::pair<int64_t, int>> rest;
    factor_large(m, rest);
    std::sort(rest.begin(), rest.end());
    for (size_t i = 0; i < rest.size();) {
        size_t j = i;
        int e = 0;
        while (j < rest.size() && rest[j].first == rest[i].first) e += rest[j++].second;
        f.factors.emplace_back(rest[i].first, e);
        i = j;
    }
    return f;
}

namespace {
std::mutex g_default_mutex;
int64_t g_default_bound = 10000000;
std::shared_ptr<const SieveTables> g_tables;
std::unique_ptr<Factorizer> g_factorizer;

void ensure_default() {
    std::lock_guard<std::mutex> lock(g_default_mutex);
    if (!g_factorizer) {
        g_tables = SieveTables::cached(g_default_bound);
        g_factorizer = std::make_unique<Factorizer>(g_tables);
    }
}
}  // namespace

void set_default_sieve_bound(int64_t bound) {
    std::lock_guard<std::mutex> lock(g_default_mutex);
    if (g_factorizer && g_default_bound != bound) {
        g_tables = SieveTables::cached(bound);
        g_factorizer = std::make_unique<Factorizer>(g_tables);
    }
    g_default_bound = bound;
}

const Factorizer& default_factorizer() {
    ensure_default();
    return *g_factorizer;
}

std::shared_ptr<const SieveTables> default_sieve() {
    ensure_default();
    return g_tables;
}

FactoredInteger factor(int64_t n) { return default_factorizer()(n); }

int64_t mobius(int64_t n) {
    if (n < 1) throw std::invalid_argument("mobius: n must be >= 1");
    auto t = default_sieve();
    if (n <= t->bound) return t->mu[n];
    return factor(n).mobius();
}

int64_t totient(int64_t n) {
    if (n < 1) throw std::invalid_argument("totient: n must be >= 1");
    auto t = default_sieve();
    if (n <= t->bound) return t->phi[n];
    return factor(n).totient();
}

std::vector<int64_t> divisors(const FactoredInteger& f) {
    std::vector<int64_t> divs{1};
    for (const auto& [p, e] : f.factors) {
        size_t old = divs.size();
        int64_t pe = 1;
        for (int i = 1; i <= e; ++i) {
            pe *= p;
            for (size_t j = 0; j < old; ++j) divs.push_back(divs[j] * pe);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

std::pair<int64_t, int64_t> smooth_sifted_split(int64_t n, int64_t P) {
    if (n < 1) throw std::invalid_argument("smooth_sifted_split: n must be >= 1");
    if (!is_prime(P)) throw std::invalid_argument("smooth_sifted_split: P must be prime");
    int64_t smooth = 1, sifted = 1;
    for (const auto& [p, e] : factor(n).factors)
        (p <= P ? smooth : sifted) *= ipow(p, e);
    return {smooth, sifted};
}

int64_t smooth_part(int64_t n, int64_t P) { return smooth_sifted_split(n, P).first; }

}  // namespace rsm
