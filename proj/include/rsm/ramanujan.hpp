#pragma once

#include <cstdint>
#include <vector>

#include "rsm/factored.hpp"

namespace rsm {

// Ramanujan sum c_q(a). Kluyver's divisor formula is the canonical path
// (pure integer arithmetic); Hoelder's closed form is the fast path. Both
// are exact; the cosine definition lives only in the test suite.
// Convention: c_q(0) = phi(q), consistent with q | 0.
int64_t ramanujan_sum(int64_t q, int64_t a);
int64_t ramanujan_sum_kluyver(int64_t q, int64_t a);
int64_t ramanujan_sum_hoelder(int64_t q, int64_t a);

// c_{p^k} at an argument of p-adic valuation v: phi(p^k) for k <= v,
// -p^(k-1) for k = v+1, 0 beyond. The stabilization every smooth Euler
// factor in this project is built on.
int64_t prime_power_csum(int64_t p, int k, int v);

// Fixed modulus, many arguments: c_q(a) depends on a only through (q, a),
// so precompute one value per divisor of q.
class CsumFixedModulus {
  public:
    explicit CsumFixedModulus(int64_t q);
    int64_t operator()(int64_t a) const;
    int64_t modulus() const { return q_; }

  private:
    int64_t q_;
    std::vector<int64_t> divs_;
    std::vector<int64_t> vals_;  // vals_[i] = c_q(divs_[i])
};

// Sum over q | n of c_q(a); asserts the Ramanujan-sum divisor identity
// value n * [n | a] and returns it.
int64_t divisor_csum_identity(int64_t n, int64_t a);

// Sum over P-smooth q | d of c_q(a), via the closed form 1_{d_(P) | a} d_(P);
// cross-checked against direct enumeration over the smooth divisors.
int64_t smooth_divisor_csum(int64_t d, int64_t a, int64_t P);

// Sum over all P-smooth q of |c_q(a)| = prod_{p <= P} 2 p^{v_p(a)};
// asserts the 2^pi(P) * a bound.
int64_t abs_smooth_csum(int64_t a, int64_t P);

// Exactly the P-smooth moduli q that can carry c_q(a) != 0: the divisors of
// prod_{p <= P} p^(v_p(a)+1), ascending (the Ramanujan vertical limit).
std::vector<int64_t> rvl_support(int64_t a, int64_t P, size_t max_count = size_t(1) << 22);

}  // namespace rsm
