#pragma once

#include <cstdint>
#include <vector>

#include "rsm/arith_fn.hpp"

namespace rsm {

// A correlation sum_{n <= N} f(n) g(n+a) where g is the Q-truncated divisor
// sum of g'. The shift a enters only through the argument of g: the type
// cannot express a-dependence inside f or g'.
struct CorrelationSpec {
    ArithmeticFunction f;
    ArithmeticFunction g_prime;  // consulted on [1..Q] only
    int64_t Q = 1;
    int64_t N = 1;

    void validate() const;  // Q <= N, everything present
};

// Direct O(N) evaluation, g(m) = sum_{q | m, q <= Q} g'(q).
Value correlate(const CorrelationSpec& spec, int64_t a);

// Truncated von Mangoldt: Lambda_N(m) = -sum_{d | m, d <= N} mu(d) log d.
// Equals Lambda(m) exactly (to rounding) once m <= N.
double lambda_truncated(int64_t N, int64_t m);

// ghat(q) = sum_{d <= Q, q | d} g'(d) / d; vanishes for q > Q.
Value g_hat(const ArithmeticFunction& g_prime, int64_t Q, int64_t q);

// The fixed-length Ramanujan expansion attached to the correlation:
// sum_{q <= Q} (ghat(q)/phi(q)) (sum_{n <= N} f(n) c_q(n)) c_q(a).
Value reef_rhs(const CorrelationSpec& spec, int64_t a);

// correlate - reef_rhs.
Value error_term(const CorrelationSpec& spec, int64_t a);

// S_f(j/q) = sum_{n <= N} f(n) e(nj/q).
Complex exp_sum(const ArithmeticFunction& f, int64_t N, int64_t j, int64_t q);

enum class SingularSeriesMethod { product, series };

// Hardy-Littlewood singular series S(2k), as the Euler product over p <=
// bound or as the Ramanujan series over q <= bound. Rejects odd shifts.
double singular_series(int64_t two_k, SingularSeriesMethod method, int64_t bound);

struct HlRow {
    int64_t shift = 0;             // 2k
    double corr_lambda = 0;        // C_{Lambda,Lambda}(N, 2k)
    double corr_lambda_trunc = 0;  // C_{Lambda,Lambda_N}(N, 2k)
    double singular_times_n = 0;   // S(2k) N
    double ratio = 0;              // corr_lambda / (S(2k) N)
    double trunc_gap = 0;          // |corr_lambda - corr_lambda_trunc|
    double trunc_gap_ratio = 0;    // trunc_gap / (2k log N log(N+2k))
};

// The desk experiment: correlations of Lambda against the singular-series
// prediction, plus the truncation-formula gap. Heuristic smoke test, not a
// theorem.
std::vector<HlRow> hl_experiment(int64_t N, const std::vector<int64_t>& shifts,
                                 int64_t singular_bound = 1000000, int threads = 1);

}  // namespace rsm
