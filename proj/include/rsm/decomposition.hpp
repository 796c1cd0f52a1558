#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rsm/arith_fn.hpp"
#include "rsm/transforms.hpp"

namespace rsm {

// Integers in (1, X] with no prime factor <= P, ascending.
std::vector<int64_t> sifted_numbers(int64_t P, int64_t X);

// Irr^(P)_d F = sum over P-sifted r > 1 of F'(dr)/r, truncated partial sums.
PartialLimit irregular_series(const ArithmeticFunction& Fp, int64_t d, int64_t P, int64_t X);

// F'(d) - [ d sum_{K in (P), squarefree} mu(K) Win_{dK} - Irr^(P)_d ]:
// The K-sum enumerates squarefree divisors of the P-primorial (2^pi(P)
// terms, capped at P <= 31). Exactly zero for exact finite-support inputs.
Value transform_decomposition_residual(const ArithmeticFunction& Fp, const CoefficientTable& win,
                                       int64_t d, int64_t P, int64_t X);

// F(a) - [ sum_{q in (P)} Win_q c_q(a) - sum_{d | a} Irr^(P)_d ]; needs P >= a.
Value expansion_decomposition_residual(const ArithmeticFunction& F, const ArithmeticFunction& Fp,
                                       const CoefficientTable& win, int64_t a, int64_t P,
                                       int64_t X);

// Finitely supported Wintner transform bookkeeping. Q_F is the largest
// nonzero index found below the scan bound -- never a claim about infinity.
struct FinWinRecord {
    CoefficientTable win;
    std::optional<int64_t> range;  // Q_F, absent if every scanned entry vanished
    int64_t scan_bound = 0;
    int64_t prime() const;  // P_F: largest prime <= Q_F (2 when Q_F < 2)

    Value value(int64_t q) const;  // zero beyond the stored entries
};

FinWinRecord detect_fin_win(const CoefficientTable& table, int64_t scan_bound);

// F = A_F - I_F: analytic part (finite trigonometric sum over q <= Q_F,
// evaluable at any complex argument) minus irregular part (divisor sum of
// irregular series; evaluated exactly through the orthogonal decomposition,
// with truncated sifted partials available as a diagnostic).
class FaiSplit {
  public:
    FaiSplit(ArithmeticFunction f_prime, FinWinRecord record);

    Complex analytic(double a) const;          // trigonometric evaluation
    Value analytic_at(int64_t a) const;        // exact c_q route
    Value irregular(int64_t a) const;          // exact via the decomposition
    PartialLimit irregular_partials(int64_t a, int64_t X) const;
    const FinWinRecord& record() const { return record_; }

  private:
    ArithmeticFunction f_prime_;
    FinWinRecord record_;
};

FaiSplit fai_split(const ArithmeticFunction& f_prime, FinWinRecord record);

struct ReefReport {
    double max_residual = 0.0;
    int64_t argmax = 1;
    std::vector<Value> residuals;            // residual at a = 1..A
    std::optional<int64_t> ell_lower_bound;  // largest q <= Q with Win_q != 0
    std::optional<int64_t> d_lower_bound;    // largest d <= A with F'(d) != 0
};

// max over a <= A of |F(a) - sum_{q <= Q} Win_q c_q(a)|, plus support scans.
ReefReport reef_check(const ArithmeticFunction& F, const CoefficientTable& win, int64_t Q,
                      int64_t A);

// | Irr^(P)_d - F'(d) Irr^(P)_1 | at matched truncation X; d must be P-smooth
// and F' flagged multiplicative.
Value multiplicative_irr_check(const ArithmeticFunction& Fp, int64_t d, int64_t P, int64_t X);

struct SiftedEulerProduct {
    double value = 1.0;          // prod_{P < p <= bound} (1 + F'(p)/p)
    PartialLimit log_partials;   // partial sums of log(1 + F'(p)/p)
};

// Needs F' multiplicative and squarefree-supported; the log-series partials
// are the convergence diagnostic.
SiftedEulerProduct sifted_euler_product(const ArithmeticFunction& Fp, int64_t P,
                                        int64_t prime_bound);

}  // namespace rsm
