#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rsm/arith_fn.hpp"
#include "rsm/value.hpp"

namespace rsm {

// The artifact's honest representation of a "lim" object: partial sums at
// doubling cutoffs plus the last increment. Whether "the limit exists" is
// never decided here; callers apply tolerances.
struct PartialLimit {
    std::vector<int64_t> cutoffs;
    std::vector<Value> partials;

    const Value& last() const { return partials.back(); }
    double last_increment() const {
        size_t k = partials.size();
        return (partials[k - 1] - partials[k - 2]).abs();
    }
};

// Default ladder 2^10, 2^11, ..., 2^20; always at least 3 rungs.
std::vector<int64_t> doubling_cutoffs(int64_t lo, int64_t hi);
std::vector<int64_t> default_cutoffs();

struct Coefficient {
    Value value;
    std::optional<int64_t> truncated_at;  // absent = exact
    bool exact() const { return !truncated_at.has_value(); }
};

enum class TransformKind { wintner, carmichael, p_smooth_wintner, p_smooth_carmichael };

// q -> coefficient, either stored entries or a closed-form rule.
class CoefficientTable {
  public:
    CoefficientTable() = default;
    CoefficientTable(TransformKind kind, int64_t P = 0) : kind_(kind), P_(P) {}

    TransformKind kind() const { return kind_; }
    int64_t smooth_bound() const { return P_; }

    void set(int64_t q, Coefficient c) { entries_[q] = std::move(c); }
    void set_rule(std::function<Coefficient(int64_t)> rule) { rule_ = std::move(rule); }

    bool has(int64_t q) const { return entries_.count(q) > 0 || rule_ != nullptr; }
    Coefficient at(int64_t q) const;
    Value value(int64_t q) const { return at(q).value; }
    Value value_or_zero(int64_t q) const { return has(q) ? at(q).value : Value(0); }
    const std::map<int64_t, Coefficient>& entries() const { return entries_; }

  private:
    TransformKind kind_ = TransformKind::wintner;
    int64_t P_ = 0;
    std::map<int64_t, Coefficient> entries_;
    std::function<Coefficient(int64_t)> rule_;
};

// Win_q F = sum_{d = 0 mod q} F'(d)/d, partial sums at doubling cutoffs.
PartialLimit wintner_partial(const ArithmeticFunction& Fp, int64_t q, int64_t X);
PartialLimit wintner_partial(const ArithmeticFunction& Fp, int64_t q,
                             const std::vector<int64_t>& cutoffs);

// Car_q F = (1/phi(q)) lim (1/x) sum_{n <= x} F(n) c_q(n), averaged at
// doubling x.
PartialLimit carmichael_partial(const ArithmeticFunction& F, int64_t q, int64_t x);
PartialLimit carmichael_partial(const ArithmeticFunction& F, int64_t q,
                                const std::vector<int64_t>& cutoffs);

// F_(P)(a) = sum over P-smooth divisors d | a of F'(d); exact finite sum.
Value smooth_restriction(const ArithmeticFunction& Fp, int64_t P, int64_t a);

// Win_q^(P) F = sum_{d in (P), q | d} F'(d)/d. Exact Euler-factor route when
// F' is multiplicative with closed-form local tails, finite enumeration when
// F' is squarefree-supported (at most 2^pi(P) terms), else truncated at X.
Coefficient p_smooth_wintner(const ArithmeticFunction& Fp, int64_t q, int64_t P, int64_t X);
PartialLimit p_smooth_wintner_partial(const ArithmeticFunction& Fp, int64_t q, int64_t P,
                                      int64_t X);

// prod_{p <= P} (1 - 1/p) * (1/phi(q)) * sum_{t in (P), t <= X} F(t) c_q(t) / t.
struct SmoothCoefficient {
    Value value;
    double tail_estimate = 0.0;  // 0 when the Euler route made it exact
};
SmoothCoefficient smooth_carmichael_coefficient(const ArithmeticFunction& F, int64_t q, int64_t P,
                                         int64_t X);

// Partial sums of the convergence-hypothesis series. Trends only, no
// verdicts.
struct HypothesisReport {
    PartialLimit wa;                         // sum |F'(d)| / d
    PartialLimit dh;                         // sum 2^omega(d) |F'(d)| / d
    PartialLimit etd;                        // (1/x) sum |F'(d)|
    std::map<int64_t, PartialLimit> wsa;     // per P: sum_{d not in (P)} |F'(d)| / d
    std::optional<PartialLimit> dd;          // sum 2^omega(q) |Win_q|, when a table is given
};
HypothesisReport hypothesis_report(const ArithmeticFunction& Fp, int64_t X,
                                   const std::vector<int64_t>& smooth_ladder = {2, 3, 5, 7, 11, 13},
                                   const CoefficientTable* win = nullptr);

}  // namespace rsm
