#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rsm/arith_fn.hpp"
#include "rsm/characters.hpp"
#include "rsm/value.hpp"

namespace rsm {

// All P-smooth n <= X, ascending, complete, duplicate-free.
std::vector<int64_t> smooth_numbers(int64_t P, int64_t X);

// prod_{p <= P} (1 - 1/p)^{-1} = sum_{m in (P)} 1/m, exact.
Rational smooth_harmonic(int64_t P);

// sum_{m in (P)} m^(eps-1) = prod_{p <= P} (1 - p^(eps-1))^{-1}, 0 < eps < 1.
double smooth_zeta_eps(int64_t P, double eps);

// One Euler factor of a series over (P): explicitly summed head terms for
// K = 0..head-1, then an exactly summed geometric tail with |ratio| < 1.
// Scalar is Rational for exact series, Complex for character-twisted ones.
template <typename Scalar>
struct LocalFactor {
    std::vector<Scalar> head;
    Scalar tail = Scalar(0);  // already summed
    Scalar total() const {
        Scalar s = tail;
        for (const Scalar& h : head) s += h;
        return s;
    }
};

template <typename Scalar>
struct EulerFactorSeries {
    std::vector<std::pair<int64_t, LocalFactor<Scalar>>> factors;  // (prime, factor)
    Scalar product() const {
        Scalar s = Scalar(1);
        for (const auto& [p, f] : factors) s = s * f.total();
        return s;
    }
};

// Ramanujan coefficients G(q) for smooth summation. The factored form
// (scale times a multiplicative local rule) is what lets sums over (P) run
// in pi(P) exact Euler factors instead of enumerating the vertical-limit
// support; arbitrary rules fall back to that enumeration.
class RamanujanCoefficients {
  public:
    static RamanujanCoefficients constant(Value c);
    static RamanujanCoefficients from_rule(std::function<Value(int64_t q)> rule);
    // G(q) = scale * prod_{p^K || q} local(p, K); local(p, 0) must be 1.
    static RamanujanCoefficients multiplicative(Value scale,
                                                std::function<Value(int64_t p, int K)> local);

    bool factored() const { return local_ != nullptr || constant_.has_value(); }
    Value at(int64_t q) const;
    Value local_at(int64_t p, int K) const;
    Value scale() const { return scale_; }

  private:
    std::optional<Value> constant_;
    std::function<Value(int64_t)> rule_;
    std::function<Value(int64_t, int)> local_;
    Value scale_ = Value(1);
};

// sum over q in (P) of G(q) c_q(a): a finite sum by the Ramanujan vertical
// limit, computed exactly (no truncation error ever). Factored coefficients
// run as a product over p <= P; plain rules enumerate the support divisors.
Value smooth_ramanujan_sum(const RamanujanCoefficients& G, int64_t a, int64_t P);

// (1/(phi(l) sum_{m in (P)} 1/m)) sum_{u in (P)} c_l(u) c_q(u) / u, exact;
// throws unless the result is the Kronecker delta 1_{l=q}.
Rational twisted_orthogonality(int64_t l, int64_t q, int64_t P);

// sum_{t in (P)} chi(t) c_l(bt) / t via per-prime Euler factors; the heads
// follow the c_{p^j} stabilization in v_p(t), the tails are geometric with
// ratio chi(p)/p.
Complex char_smooth_sum(const DirichletCharacter& chi, int64_t l, int64_t b, int64_t P);

}  // namespace rsm
