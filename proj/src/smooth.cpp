#include "rsm/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rsm/factored.hpp"
#include "rsm/ramanujan.hpp"

namespace rsm {

std::vector<int64_t> smooth_numbers(int64_t P, int64_t X) {
    if (!is_prime(P)) throw std::invalid_argument("smooth_numbers: P must be prime");
    if (X < 1) throw std::invalid_argument("smooth_numbers: X must be >= 1");
    std::vector<int64_t> primes = primes_up_to(P);
    std::vector<int64_t> out;
    // DFS over exponent vectors; products stay <= X so no overflow.
    std::function<void(size_t, int64_t)> walk = [&](size_t i, int64_t prod) {
        out.push_back(prod);
        for (size_t j = i; j < primes.size(); ++j) {
            if (prod > X / primes[j]) break;
            walk(j, prod * primes[j]);
        }
    };
    walk(0, 1);
    std::sort(out.begin(), out.end());
    return out;
}

Rational smooth_harmonic(int64_t P) {
    if (!is_prime(P)) throw std::invalid_argument("smooth_harmonic: P must be prime");
    Rational h(1);
    for (int64_t p : primes_up_to(P)) h *= Rational(static_cast<long>(p), static_cast<long>(p - 1));
    h.canonicalize();
    return h;
}

double smooth_zeta_eps(int64_t P, double eps) {
    if (!is_prime(P)) throw std::invalid_argument("smooth_zeta_eps: P must be prime");
    if (eps <= 0.0 || eps >= 1.0)
        throw std::invalid_argument("smooth_zeta_eps: need 0 < eps < 1 (series diverges at 1)");
    double prod = 1.0;
    for (int64_t p : primes_up_to(P)) prod /= 1.0 - std::pow(static_cast<double>(p), eps - 1.0);
    return prod;
}

RamanujanCoefficients RamanujanCoefficients::constant(Value c) {
    RamanujanCoefficients g;
    g.constant_ = c;
    g.scale_ = c;
    return g;
}

RamanujanCoefficients RamanujanCoefficients::from_rule(std::function<Value(int64_t)> rule) {
    RamanujanCoefficients g;
    g.rule_ = std::move(rule);
    return g;
}

RamanujanCoefficients RamanujanCoefficients::multiplicative(
    Value scale, std::function<Value(int64_t, int)> local) {
    RamanujanCoefficients g;
    g.scale_ = scale;
    g.local_ = std::move(local);
    return g;
}

Value RamanujanCoefficients::at(int64_t q) const {
    if (q < 1) throw std::invalid_argument("RamanujanCoefficients: q must be >= 1");
    if (constant_) return *constant_;
    if (local_) {
        Value v = scale_;
        for (const auto& [p, e] : factor(q).factors) v *= local_(p, e);
        return v;
    }
    if (!rule_) throw std::logic_error("RamanujanCoefficients: empty");
    return rule_(q);
}

Value RamanujanCoefficients::local_at(int64_t p, int K) const {
    if (K == 0) return Value(1);
    if (constant_) return Value(1);
    if (!local_) throw std::logic_error("RamanujanCoefficients: no local rule");
    return local_(p, K);
}

Value smooth_ramanujan_sum(const RamanujanCoefficients& G, int64_t a, int64_t P) {
    if (a < 1) throw std::invalid_argument("smooth_ramanujan_sum: a must be >= 1");
    if (!is_prime(P)) throw std::invalid_argument("smooth_ramanujan_sum: P must be prime");
    FactoredInteger fa = factor(a);
    if (G.factored()) {
        // sum_{q in (P)} G(q) c_q(a) = scale * prod_{p <= P}
        //   sum_{K = 0}^{v_p(a)+1} local(p, K) c_{p^K}(a).
        Value prod(1);
        for (int64_t p : primes_up_to(P)) {
            int v = fa.valuation(p);
            Value fac(0);
            for (int K = 0; K <= v + 1; ++K)
                fac += G.local_at(p, K) * Value(prime_power_csum(p, K, v));
            prod *= fac;
            if (prod.is_zero() && prod.is_exact()) break;
        }
        return G.scale() * prod;
    }
    Value sum(0);
    for (int64_t q : rvl_support(a, P)) sum += G.at(q) * Value(ramanujan_sum_kluyver(q, a));
    return sum;
}

Rational twisted_orthogonality(int64_t l, int64_t q, int64_t P) {
    if (!is_prime(P)) throw std::invalid_argument("twisted_orthogonality: P must be prime");
    FactoredInteger fl = factor(l), fq = factor(q);
    if (smooth_part(l, P) != l || smooth_part(q, P) != q)
        throw std::invalid_argument("twisted_orthogonality: l and q must be P-smooth");

    EulerFactorSeries<Rational> series;
    for (int64_t p : primes_up_to(P)) {
        int lam = fl.valuation(p), kap = fq.valuation(p);
        int stab = std::max(lam, kap);
        LocalFactor<Rational> f;
        for (int K = 0; K < stab; ++K) {
            long num = static_cast<long>(prime_power_csum(p, lam, K) * prime_power_csum(p, kap, K));
            f.head.push_back(Rational(num, static_cast<long>(ipow(p, K))));
        }
        // Both Ramanujan sums sit at phi(p^lam) phi(p^kap) from K = stab on.
        Rational consts(static_cast<long>(ipow(p, std::max(lam - 1, 0)) * (lam > 0 ? p - 1 : 1)) *
                        static_cast<long>(ipow(p, std::max(kap - 1, 0)) * (kap > 0 ? p - 1 : 1)));
        f.tail = consts * Rational(static_cast<long>(p), static_cast<long>(p - 1)) /
                 Rational(static_cast<long>(ipow(p, stab)));
        series.factors.emplace_back(p, f);
    }
    Rational r = series.product() / (Rational(static_cast<long>(fl.totient())) * smooth_harmonic(P));
    r.canonicalize();
    Rational expected(l == q ? 1 : 0);
    if (r != expected)
        throw std::logic_error("twisted orthogonality violated at l=" + std::to_string(l) +
                               ", q=" + std::to_string(q));
    return r;
}

Complex char_smooth_sum(const DirichletCharacter& chi, int64_t l, int64_t b, int64_t P) {
    if (!is_prime(P)) throw std::invalid_argument("char_smooth_sum: P must be prime");
    if (l < 1 || b < 1) throw std::invalid_argument("char_smooth_sum: l, b must be >= 1");
    FactoredInteger fl = factor(l), fb = factor(b);
    if (smooth_part(l, P) != l)
        throw std::invalid_argument("char_smooth_sum: l has a prime factor beyond P");

    EulerFactorSeries<Complex> series;
    for (int64_t p : primes_up_to(P)) {
        int lam = fl.valuation(p), beta = fb.valuation(p);
        Complex chip = chi(p);
        LocalFactor<Complex> f;
        if (std::abs(chip) == 0.0) {
            // Only K = 0 survives.
            f.head.push_back(Complex(static_cast<double>(prime_power_csum(p, lam, beta)), 0.0));
        } else {
            Complex ratio = chip / static_cast<double>(p);
            if (std::abs(ratio) >= 1.0)
                throw std::logic_error("char_smooth_sum: non-contracting tail ratio");
            int stab = std::max(lam - beta, 0);
            Complex rk(1.0, 0.0);
            for (int K = 0; K < stab; ++K) {
                f.head.push_back(rk * static_cast<double>(prime_power_csum(p, lam, beta + K)));
                rk *= ratio;
            }
            // c stabilizes at phi(p^lam) once v_p(argument) >= lam.
            double phi_lam = static_cast<double>(lam > 0 ? ipow(p, lam - 1) * (p - 1) : 1);
            f.tail = rk * phi_lam / (Complex(1.0, 0.0) - ratio);
        }
        series.factors.emplace_back(p, f);
    }
    return series.product();
}

}  // namespace rsm
