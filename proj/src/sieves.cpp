#include "rsm/sieves.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <mutex>
#include <stdexcept>
#include <string>

#include "rsm/util.hpp"

namespace rsm {

SieveTables SieveTables::build(int64_t bound) {
    if (bound < 1) throw std::invalid_argument("SieveTables: bound must be >= 1");
    SieveTables t;
    t.bound = bound;
    t.spf.assign(bound + 1, 0);
    t.mu.assign(bound + 1, 0);
    t.phi.assign(bound + 1, 0);
    t.mu[1] = 1;
    t.phi[1] = 1;

    // Linear sieve: each n crossed once by its smallest prime.
    std::vector<uint32_t> primes;
    for (int64_t n = 2; n <= bound; ++n) {
        if (t.spf[n] == 0) {
            t.spf[n] = static_cast<uint32_t>(n);
            t.mu[n] = -1;
            t.phi[n] = static_cast<uint32_t>(n - 1);
            primes.push_back(static_cast<uint32_t>(n));
        }
        for (uint32_t p : primes) {
            if (p > t.spf[n] || static_cast<int64_t>(p) * n > bound) break;
            int64_t m = static_cast<int64_t>(p) * n;
            t.spf[m] = p;
            if (n % p == 0) {
                t.mu[m] = 0;
                t.phi[m] = t.phi[n] * p;
            } else {
                t.mu[m] = static_cast<int8_t>(-t.mu[n]);
                t.phi[m] = t.phi[n] * (p - 1);
            }
        }
    }
    return t;
}

namespace {

std::string cache_path(int64_t bound) {
    const char* dir = std::getenv("RSM_CACHE_DIR");
    if (!dir || !*dir) return {};
    return std::string(dir) + "/rsm-sieve-" + std::to_string(bound) + ".bin";
}

bool load_cached(const std::string& path, SieveTables& t, int64_t bound) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) return false;
    int64_t stored = 0;
    bool ok = std::fread(&stored, sizeof stored, 1, f) == 1 && stored == bound;
    if (ok) {
        t.bound = bound;
        t.spf.resize(bound + 1);
        t.mu.resize(bound + 1);
        t.phi.resize(bound + 1);
        ok = std::fread(t.spf.data(), sizeof(uint32_t), t.spf.size(), f) == t.spf.size() &&
             std::fread(t.mu.data(), sizeof(int8_t), t.mu.size(), f) == t.mu.size() &&
             std::fread(t.phi.data(), sizeof(uint32_t), t.phi.size(), f) == t.phi.size();
    }
    std::fclose(f);
    return ok;
}

void store_cached(const std::string& path, const SieveTables& t) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) return;  // cache is best-effort
    std::fwrite(&t.bound, sizeof t.bound, 1, f);
    std::fwrite(t.spf.data(), sizeof(uint32_t), t.spf.size(), f);
    std::fwrite(t.mu.data(), sizeof(int8_t), t.mu.size(), f);
    std::fwrite(t.phi.data(), sizeof(uint32_t), t.phi.size(), f);
    std::fclose(f);
}

}  // namespace

std::shared_ptr<const SieveTables> SieveTables::cached(int64_t bound) {
    std::string path = cache_path(bound);
    auto t = std::make_shared<SieveTables>();
    if (!path.empty() && load_cached(path, *t, bound)) return t;
    *t = build(bound);
    if (!path.empty()) store_cached(path, *t);
    return t;
}

std::vector<int64_t> primes_up_to(int64_t bound) {
    std::vector<int64_t> primes;
    if (bound < 2) return primes;
    std::vector<bool> comp(bound + 1, false);
    for (int64_t n = 2; n <= bound; ++n) {
        if (comp[n]) continue;
        primes.push_back(n);
        for (int64_t m = n * n; m <= bound; m += n) comp[m] = true;
    }
    return primes;
}

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    // Sinclair's deterministic base set for 64-bit integers.
    for (uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
        uint64_t x = powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == static_cast<uint64_t>(n - 1)) continue;
        bool witness = true;
        for (int i = 1; i < s && witness; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == static_cast<uint64_t>(n - 1)) witness = false;
        }
        if (witness) return false;
    }
    return true;
}

int64_t primorial(int64_t P) {
    if (!is_prime(P)) throw std::invalid_argument("primorial: P must be prime");
    int64_t r = 1;
    for (int64_t p = 2; p <= P; ++p) {
        if (!is_prime(p)) continue;
        if (r > INT64_MAX / p) throw std::overflow_error("primorial: 64-bit overflow");
        r *= p;
    }
    return r;
}

int64_t prev_prime(int64_t n) {
    for (int64_t m = n; m >= 2; --m)
        if (is_prime(m)) return m;
    throw std::invalid_argument("prev_prime: no prime <= " + std::to_string(n));
}

}  // namespace rsm
