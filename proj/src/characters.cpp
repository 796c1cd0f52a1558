#include "rsm/characters.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rsm/factored.hpp"
#include "rsm/ramanujan.hpp"
#include "rsm/smooth.hpp"

namespace rsm {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int64_t kMaxCharacterModulus = 10000;

int64_t primitive_root_mod_p(int64_t p) {
    if (p == 2) return 1;
    std::vector<int64_t> prime_divs;
    for (const auto& [r, e] : factor(p - 1).factors) prime_divs.push_back(r);
    for (int64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (int64_t r : prime_divs)
            if (powmod_u64(g, (p - 1) / r, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw std::logic_error("primitive root search failed");
}
}  // namespace

struct CharacterGroup::Impl {
    int64_t q = 1;
    int64_t phi = 1;
    int64_t L = 1;  // lcm of generator orders
    struct Component {
        int64_t pe = 1;
        int ngens = 0;
        std::array<int64_t, 2> orders{1, 1};
        std::vector<std::array<int32_t, 2>> dlog;  // [-1,-1] marks non-units
    };
    std::vector<Component> comps;
    std::vector<int64_t> flat_orders;
};

CharacterGroup::CharacterGroup(int64_t q) {
    if (q < 1) throw std::invalid_argument("CharacterGroup: q must be >= 1");
    if (q > kMaxCharacterModulus)
        throw std::invalid_argument("CharacterGroup: modulus beyond supported table size");
    auto impl = std::make_shared<Impl>();
    impl->q = q;
    for (const auto& [p, e] : factor(q).factors) {
        Impl::Component c;
        c.pe = ipow(p, e);
        c.dlog.assign(c.pe, {-1, -1});
        if (p == 2 && e == 1) {
            c.ngens = 1;
            c.orders = {1, 1};
            c.dlog[1] = {0, 0};
        } else if (p == 2 && e >= 3) {
            // Z_{2^e}^* = <-1> x <5>.
            c.ngens = 2;
            c.orders = {2, c.pe / 4};
            int64_t pow5 = 1;
            for (int64_t t = 0; t < c.orders[1]; ++t) {
                c.dlog[pow5] = {0, static_cast<int32_t>(t)};
                c.dlog[c.pe - pow5] = {1, static_cast<int32_t>(t)};
                pow5 = pow5 * 5 % c.pe;
            }
        } else {
            // Odd prime power (and 4): cyclic with a lifted primitive root.
            c.ngens = 1;
            int64_t g;
            if (p == 2) {
                g = 3;  // e == 2
            } else {
                g = primitive_root_mod_p(p);
                if (e > 1 && powmod_u64(g, p - 1, p * p) == 1) g += p;
            }
            int64_t order = c.pe / p * (p - 1);
            c.orders = {order, 1};
            uint64_t cur = 1;
            for (int64_t t = 0; t < order; ++t) {
                c.dlog[cur] = {static_cast<int32_t>(t), 0};
                cur = mulmod_u64(cur, g, c.pe);
            }
        }
        impl->phi *= c.ngens == 2 ? c.orders[0] * c.orders[1] : c.orders[0];
        for (int i = 0; i < c.ngens; ++i) {
            impl->flat_orders.push_back(c.orders[i]);
            impl->L = std::lcm(impl->L, c.orders[i]);
        }
        impl->comps.push_back(std::move(c));
    }
    impl_ = std::move(impl);
}

int64_t CharacterGroup::modulus() const { return impl_->q; }
int64_t CharacterGroup::size() const { return impl_->phi; }

DirichletCharacter CharacterGroup::character(int64_t index) const {
    if (index < 0 || index >= size()) throw std::out_of_range("CharacterGroup: character index");
    DirichletCharacter chi;
    chi.group_ = impl_;
    chi.exps_.resize(impl_->flat_orders.size());
    for (size_t i = 0; i < impl_->flat_orders.size(); ++i) {
        chi.exps_[i] = index % impl_->flat_orders[i];
        index /= impl_->flat_orders[i];
    }
    return chi;
}

DirichletCharacter CharacterGroup::principal() const { return character(0); }

Complex DirichletCharacter::operator()(int64_t n) const {
    const auto& g = *group_;
    if (g.q == 1) return {1.0, 0.0};
    int64_t r = n % g.q;
    if (r < 0) r += g.q;
    if (std::gcd(r, g.q) != 1) return {0.0, 0.0};
    // Accumulate the angle as an exact fraction of L before touching doubles.
    int64_t num = 0;
    size_t gi = 0;
    for (const auto& c : g.comps) {
        int64_t rc = r % c.pe;
        const auto& dl = c.dlog[rc];
        for (int i = 0; i < c.ngens; ++i, ++gi)
            num = (num + exps_[gi] * (g.L / g.flat_orders[gi]) % g.L * dl[i]) % g.L;
    }
    return std::polar(1.0, kTwoPi * static_cast<double>(num) / static_cast<double>(g.L));
}

bool DirichletCharacter::principal() const {
    for (int64_t e : exps_)
        if (e != 0) return false;
    return true;
}

DirichletCharacter DirichletCharacter::conjugate() const {
    DirichletCharacter chi = *this;
    for (size_t i = 0; i < exps_.size(); ++i)
        chi.exps_[i] = exps_[i] == 0 ? 0 : group_->flat_orders[i] - exps_[i];
    return chi;
}

int64_t DirichletCharacter::modulus() const { return group_->q; }

Complex gauss_sum(const DirichletCharacter& chi) {
    int64_t q = chi.modulus();
    KahanComplex acc;
    for (int64_t m = 1; m <= q; ++m) {
        if (std::gcd(m, q) != 1) continue;
        acc.add(chi(m) * std::polar(1.0, kTwoPi * static_cast<double>(m) / static_cast<double>(q)));
    }
    return acc.value();
}

std::pair<int64_t, int64_t> absorb_factor(int64_t l, int64_t b, int64_t t) {
    if (l < 1 || b < 1 || t < 1) throw std::invalid_argument("absorb_factor: args must be >= 1");
    // gcd(l, bt) without forming bt.
    int64_t bt_mod = static_cast<int64_t>(mulmod_u64(b % l, t % l, l));
    int64_t lhs = [&] {
        int64_t g = std::gcd(l, bt_mod);
        if (bt_mod == 0) g = l;
        int64_t m = l / g;
        int64_t mu_m = mobius(m);
        return mu_m == 0 ? 0 : mu_m * (totient(l) / totient(m));
    }();
    int64_t lp = l / std::gcd(l, b);
    int64_t rhs = totient(l) / totient(lp) * ramanujan_sum_hoelder(lp, t);
    if (lhs != rhs)
        throw std::logic_error("absorb_factor identity failed at l=" + std::to_string(l) +
                               ", b=" + std::to_string(b) + ", t=" + std::to_string(t));
    return {lhs, rhs};
}

Complex char_flip_sum(int64_t l_prime, const DirichletCharacter& chi) {
    if (l_prime < 1) throw std::invalid_argument("char_flip_sum: l' must be >= 1");
    int64_t q2 = std::gcd(l_prime, chi.modulus());
    int64_t l2 = l_prime / q2;
    Complex result = static_cast<double>(mobius(q2)) * chi(l2);
    DirichletCharacter bar = chi.conjugate();
    for (const auto& [p, e] : factor(l2).factors) result *= Complex(1.0, 0.0) - bar(p);
    return result;
}

Rational exp_car_coefficient(int64_t q, int64_t j, int64_t l) {
    if (q < 1 || l < 1) throw std::invalid_argument("exp_car_coefficient: q, l must be >= 1");
    if (q > 1 && std::gcd(((j % q) + q) % q, q) != 1)
        throw std::invalid_argument("exp_car_coefficient: j must be a unit mod q");
    if (l != q) return Rational(0);
    Rational r(1, static_cast<long>(totient(q)));
    r.canonicalize();
    return r;
}

namespace {

void check_theorem5_inputs(int64_t q, int64_t j, int64_t l, int64_t P) {
    if (q < 1 || l < 1) throw std::invalid_argument("exp_p_smooth_coefficient: q, l >= 1");
    if (!is_prime(P) || P < q)
        throw std::invalid_argument("exp_p_smooth_coefficient: need P prime, P >= q");
    if (smooth_part(l, P) != l)
        throw std::invalid_argument("exp_p_smooth_coefficient: l must be P-smooth");
    if (q > 1 && std::gcd(((j % q) + q) % q, q) != 1)
        throw std::invalid_argument("exp_p_smooth_coefficient: j must be a unit mod q");
}

}  // namespace

Complex exp_p_smooth_coefficient(int64_t q, int64_t j, int64_t l, int64_t P,
                                 ExpCoefficientMethod method) {
    check_theorem5_inputs(q, j, l, P);
    double h_full = smooth_harmonic(P).get_d();

    if (method == ExpCoefficientMethod::lemma8) {
        // (1/(phi(l) H(P))) sum_{b | q} (1/(b phi(q'))) sum_chi tau(conj chi)
        //   chi(j) sum_{t in (P)} chi(t) c_l(bt) / t.
        KahanComplex total;
        for (int64_t b : divisors(factor(q))) {
            int64_t qp = q / b;
            CharacterGroup group(qp);
            KahanComplex inner;
            for (int64_t i = 0; i < group.size(); ++i) {
                DirichletCharacter chi = group.character(i);
                inner.add(gauss_sum(chi.conjugate()) * chi(j) * char_smooth_sum(chi, l, b, P));
            }
            total.add(inner.value() / static_cast<double>(b * totient(qp)));
        }
        return total.value() / (static_cast<double>(totient(l)) * h_full);
    }

    // Explicit formula: classic coefficient plus the non-principal character
    // correction with partial Euler products.
    Complex base(l == q ? 1.0 / static_cast<double>(totient(q)) : 0.0, 0.0);
    std::vector<int64_t> primes = primes_up_to(P);
    KahanComplex corr;
    for (int64_t b : divisors(factor(q))) {
        int64_t qp = q / b;
        if (qp <= 2) continue;  // no non-principal characters mod 1 or 2
        int64_t lp = l / std::gcd(l, b);
        int64_t q2 = std::gcd(lp, qp);
        int64_t l2 = lp / q2;
        CharacterGroup group(qp);
        for (int64_t i = 0; i < group.size(); ++i) {
            DirichletCharacter chi = group.character(i);
            if (chi.principal()) continue;
            DirichletCharacter bar = chi.conjugate();
            Complex flip = static_cast<double>(mobius(q2)) * chi(l2);
            for (const auto& [p, e] : factor(l2).factors) flip *= Complex(1.0, 0.0) - bar(p);
            Complex euler(1.0, 0.0);
            for (int64_t p : primes) euler /= Complex(1.0, 0.0) - chi(p) / static_cast<double>(p);
            Complex term = gauss_sum(bar) * chi(j) * flip * euler /
                           (static_cast<double>(b * totient(qp) * totient(lp)) * h_full);
            corr.add(term);
        }
    }
    return base + corr.value();
}

Complex bh_p_smooth_coefficient(const CorrelationSpec& spec, int64_t l, int64_t P,
                                ExpCoefficientMethod method) {
    spec.validate();
    if (!is_prime(P) || P < spec.Q)
        throw std::invalid_argument("bh_p_smooth_coefficient: need P prime, P >= Q");
    if (smooth_part(l, P) != l)
        throw std::invalid_argument("bh_p_smooth_coefficient: l must be P-smooth");
    KahanComplex total;
    for (int64_t q = 1; q <= spec.Q; ++q) {
        Complex ghat = g_hat(spec.g_prime, spec.Q, q).to_complex();
        if (std::abs(ghat) == 0.0) continue;
        for (int64_t j = 1; j <= q; ++j) {
            if (std::gcd(j, q) != 1) continue;
            Complex sf = exp_sum(spec.f, spec.N, j, q);
            if (std::abs(sf) == 0.0) continue;
            total.add(ghat * sf * exp_p_smooth_coefficient(q, j, l, P, method));
        }
    }
    return total.value();
}

Complex error_term_characters(const CorrelationSpec& spec, int64_t a) {
    spec.validate();
    if (a < 1) throw std::invalid_argument("error_term_characters: a must be >= 1");
    KahanComplex total;
    for (int64_t q = 1; q <= spec.Q; ++q) {
        Complex ghat = g_hat(spec.g_prime, spec.Q, q).to_complex();
        if (std::abs(ghat) == 0.0) continue;
        int64_t g = std::gcd(q, a);
        int64_t qp = q / g, ap = a / g;
        if (qp <= 2) continue;
        CharacterGroup group(qp);
        KahanComplex inner;
        for (int64_t i = 0; i < group.size(); ++i) {
            DirichletCharacter chi = group.character(i);
            if (chi.principal()) continue;
            KahanComplex jsum;
            for (int64_t j = 1; j <= q; ++j) {
                if (std::gcd(j, q) != 1) continue;
                jsum.add(chi(j) * exp_sum(spec.f, spec.N, j, q));
            }
            inner.add(gauss_sum(chi.conjugate()) * chi(ap) * jsum.value());
        }
        total.add(ghat * inner.value() / static_cast<double>(totient(qp)));
    }
    return total.value();
}

}  // namespace rsm
