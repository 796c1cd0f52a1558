#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace rsm {

// Smallest-prime-factor, Moebius and totient tables on [1..bound], immutable
// after construction and safe to share across threads.
struct SieveTables {
    int64_t bound = 0;
    std::vector<uint32_t> spf;  // spf[n] for 2 <= n <= bound, spf[0] = spf[1] = 0
    std::vector<int8_t> mu;     // mu[1] = 1
    std::vector<uint32_t> phi;  // phi[1] = 1

    static SieveTables build(int64_t bound);
    // Honors RSM_CACHE_DIR: loads a previously built table of the same bound,
    // or builds and stores one.
    static std::shared_ptr<const SieveTables> cached(int64_t bound);
};

std::vector<int64_t> primes_up_to(int64_t bound);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(int64_t n);

// Product of all primes <= P; P must be prime. Throws on 64-bit overflow
// (anything past P = 47).
int64_t primorial(int64_t P);

int64_t prev_prime(int64_t n);  // largest prime <= n; throws if n < 2

}  // namespace rsm
