#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rsm/sieves.hpp"

namespace rsm {

// An integer together with its full prime factorization, primes ascending.
// factor(1) carries an empty list (the empty product).
struct FactoredInteger {
    int64_t n = 1;
    std::vector<std::pair<int64_t, int>> factors;

    int valuation(int64_t p) const;
    int64_t squarefree_kernel() const;  // kappa(n), product of distinct primes
    bool squarefree() const;
    int omega() const { return static_cast<int>(factors.size()); }
    int mobius() const;    // 0 on non-squarefree
    int64_t totient() const;
};

// Table-backed for n <= sieve bound, Pollard rho beyond (irregular-series
// tails evaluate F'(dr) at r past any fixed table).
class Factorizer {
  public:
    explicit Factorizer(std::shared_ptr<const SieveTables> tables) : tables_(std::move(tables)) {}
    FactoredInteger operator()(int64_t n) const;

  private:
    std::shared_ptr<const SieveTables> tables_;
};

// Process-wide factorizer over a lazily built sieve (bound configurable
// before first use; default 1 << 20).
void set_default_sieve_bound(int64_t bound);
const Factorizer& default_factorizer();
std::shared_ptr<const SieveTables> default_sieve();

FactoredInteger factor(int64_t n);
int64_t mobius(int64_t n);
int64_t totient(int64_t n);

std::vector<int64_t> divisors(const FactoredInteger& f);  // ascending

// n = n_smooth * n_sifted with n_smooth in (P), n_sifted in )P(.
std::pair<int64_t, int64_t> smooth_sifted_split(int64_t n, int64_t P);
int64_t smooth_part(int64_t n, int64_t P);  // d_(P)

}  // namespace rsm
