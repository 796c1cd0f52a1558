#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "rsm/correlations.hpp"
#include "rsm/util.hpp"
#include "rsm/value.hpp"

namespace rsm {

class DirichletCharacter;

// All phi(q) characters mod q, built once via CRT components with
// precomputed discrete-log tables (primitive roots for odd prime powers,
// {-1, 5} for 2^k with k >= 3). Index 0 is principal.
class CharacterGroup {
  public:
    struct Impl;

    explicit CharacterGroup(int64_t q);
    int64_t modulus() const;
    int64_t size() const;  // phi(q)
    DirichletCharacter character(int64_t index) const;
    DirichletCharacter principal() const;

  private:
    std::shared_ptr<const Impl> impl_;
};

// A Dirichlet character mod q, represented by exponents on the group
// generators. Completely multiplicative on residues coprime to q, zero
// elsewhere.
class DirichletCharacter {
  public:
    Complex operator()(int64_t n) const;
    bool principal() const;
    DirichletCharacter conjugate() const;
    int64_t modulus() const;
    const std::vector<int64_t>& exponents() const { return exps_; }

  private:
    friend class CharacterGroup;
    std::shared_ptr<const CharacterGroup::Impl> group_;
    std::vector<int64_t> exps_;
};

// tau(chi) = sum over units m mod q' of chi(m) e^(2 pi i m / q').
Complex gauss_sum(const DirichletCharacter& chi);

// Both sides of c_l(bt) = phi(l)/phi(l/(l,b)) * c_{l/(l,b)}(t); throws if
// they ever disagree.
std::pair<int64_t, int64_t> absorb_factor(int64_t l, int64_t b, int64_t t);

// sum_{d | l'} chi(d) mu(l'/d) via the closed form
// mu(q'') chi(l'') prod_{p | l''} (1 - conj(chi)(p)), q'' = (l', q'), l'' = l'/q''.
Complex char_flip_sum(int64_t l_prime, const DirichletCharacter& chi);

// Classic Carmichael coefficient of e_q(j .): exactly 1_{l=q} / phi(q).
Rational exp_car_coefficient(int64_t q, int64_t j, int64_t l);

enum class ExpCoefficientMethod { lemma8, theorem5 };

// P-smooth Carmichael coefficient of e_q(j .) at l in (P), P >= q.
// lemma8 runs the character switch plus Euler-factorized smooth sums;
// theorem5 evaluates the explicit closed formula. The two routes agree.
Complex exp_p_smooth_coefficient(int64_t q, int64_t j, int64_t l, int64_t P, ExpCoefficientMethod method);

// P-smooth Carmichael coefficient of a correlation with basic-hypothesis
// structure: the linear combination over (q <= Q, j in Z_q^*) of the
// imaginary-exponential coefficients, weighted by ghat(q) S_f(j/q).
Complex bh_p_smooth_coefficient(const CorrelationSpec& spec, int64_t l, int64_t P,
                                ExpCoefficientMethod method = ExpCoefficientMethod::theorem5);

// Error term of a correlation via the Dirichlet-characters explicit formula
// (q' = q/(q,a), a' = a/(q,a); only non-principal characters contribute).
Complex error_term_characters(const CorrelationSpec& spec, int64_t a);

}  // namespace rsm
