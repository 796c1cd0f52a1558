#pragma once

#include <cstdint>
#include <vector>

#include "rsm/transforms.hpp"
#include "rsm/value.hpp"

namespace rsm {

// The basic-hypothesis correlation that has no fixed-length expansion:
// F0(a) = c_{p0}(a-1) for an odd prime p0 (the indicator f picks n0 = p0-1,
// the divisor-sum g is c_{p0} itself).
struct CounterexampleSpec {
    int64_t p0 = 5;
    void validate() const;
};

// F0 and its Eratosthenes transform in closed form:
// F0'(1) = phi(p0), F0'(d) = p0 S_{p0}(d) for d > 1.
int64_t f0(const CounterexampleSpec& spec, int64_t a);
int64_t f0_prime(const CounterexampleSpec& spec, int64_t d);

// S_{p0}(d) = sum over divisors a | d with a = 1 mod p0 of mu(d/a).
int64_t s_value(const CounterexampleSpec& spec, int64_t d);

enum class SCase { zero, one, two };

struct SCaseResult {
    SCase c = SCase::zero;
    int64_t value = 0;        // S_{p0}(d)
    int64_t reduced = 0;      // case one: S(d/p0) with value = -reduced
    bool forced_zero = false; // case zero with a prime factor = 1 mod p0
};

// Case split on v_{p0}(d) for d > 1, asserting the valuation-case reductions.
SCaseResult s_case(const CounterexampleSpec& spec, int64_t d);

// S_{p0}(p^K) = 1_{p^K = 1 mod p0} - 1_{p^(K-1) = 1 mod p0}, p != p0.
int64_t s_prime_power(const CounterexampleSpec& spec, int64_t p, int64_t K);

// Squarefree variant: sum over a | d, a = 1 mod p0 of mu(a); |S| = |S~|.
int64_t s_tilde(const CounterexampleSpec& spec, int64_t d);

struct MeanValueRow {
    int64_t x = 0;
    double raw_mean = 0.0;     // (1/x) sum_{d <= x} |F0'(d)|
    double flat_scaled = 0.0;  // (p0+1)/x * flat-restricted sum of |S|
    int64_t flat_count = 0;    // number of flat d counted
};

// Both sides of the mean-value identity chain at finite x; a trend report,
// never a conclusion about the limit.
MeanValueRow mean_value_partial(const CounterexampleSpec& spec, int64_t x);

struct ReefFailureReport {
    CoefficientTable win;                 // -1/phi(p0) at q = p0, zero otherwise
    std::vector<Value> residuals;         // REEF residual at a = 1..A
    std::vector<int64_t> zero_residual_a; // the a where both sides agree
    Value residual_at_1;
    PartialLimit win_p0_partial;          // wintner_partial trend at q = p0
};

// The whole point: the Wintner transform is finitely supported yet the
// fixed-length expansion misses F0, visibly at a = 1.
ReefFailureReport reef_failure_demo(const CounterexampleSpec& spec, int64_t Q, int64_t A,
                                    int64_t partial_X = 1 << 18);

}  // namespace rsm
