#include "rsm/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rsm/factored.hpp"
#include "rsm/ramanujan.hpp"
#include "rsm/smooth.hpp"
#include "rsm/util.hpp"

namespace rsm {

std::vector<int64_t> doubling_cutoffs(int64_t lo, int64_t hi) {
    if (lo < 2 || hi < lo) throw std::invalid_argument("doubling_cutoffs: need 2 <= lo <= hi");
    std::vector<int64_t> cs;
    for (int64_t c = lo; c < hi; c *= 2) cs.push_back(c);
    cs.push_back(hi);
    while (cs.size() < 3) cs.insert(cs.begin(), std::max<int64_t>(2, cs.front() / 2));
    return cs;
}

std::vector<int64_t> default_cutoffs() { return doubling_cutoffs(1 << 10, 1 << 20); }

Coefficient CoefficientTable::at(int64_t q) const {
    auto it = entries_.find(q);
    if (it != entries_.end()) return it->second;
    if (rule_) return rule_(q);
    throw std::out_of_range("CoefficientTable: no entry for q=" + std::to_string(q));
}

namespace {

std::vector<int64_t> cutoffs_up_to(int64_t X) {
    return doubling_cutoffs(std::min<int64_t>(X, 1 << 10), X);
}

// Shared accumulator walking d = q, 2q, ... with a per-term weight; partials
// recorded at each cutoff. Complexity O(X/q) regardless of ladder length.
PartialLimit accumulate_partials(const std::vector<int64_t>& cutoffs, bool complex_valued,
                                 int64_t start, int64_t step,
                                 const std::function<Complex(int64_t)>& term) {
    PartialLimit pl;
    pl.cutoffs = cutoffs;
    KahanComplex acc;
    size_t ci = 0;
    for (int64_t d = start; ci < cutoffs.size(); d += step) {
        while (ci < cutoffs.size() && d > cutoffs[ci]) {
            Complex v = acc.value();
            pl.partials.push_back(complex_valued ? Value(v) : Value(v.real()));
            ++ci;
        }
        if (ci >= cutoffs.size()) break;
        acc.add(term(d));
    }
    while (pl.partials.size() < cutoffs.size()) {
        Complex v = acc.value();
        pl.partials.push_back(complex_valued ? Value(v) : Value(v.real()));
    }
    return pl;
}

}  // namespace

PartialLimit wintner_partial(const ArithmeticFunction& Fp, int64_t q,
                             const std::vector<int64_t>& cutoffs) {
    if (q < 1) throw std::invalid_argument("wintner_partial: q must be >= 1");
    return accumulate_partials(cutoffs, Fp.complex_valued(), q, q, [&](int64_t d) {
        return Fp(d).to_complex() / static_cast<double>(d);
    });
}

PartialLimit wintner_partial(const ArithmeticFunction& Fp, int64_t q, int64_t X) {
    return wintner_partial(Fp, q, cutoffs_up_to(X));
}

PartialLimit carmichael_partial(const ArithmeticFunction& F, int64_t q,
                                const std::vector<int64_t>& cutoffs) {
    if (q < 1) throw std::invalid_argument("carmichael_partial: q must be >= 1");
    PartialLimit pl;
    pl.cutoffs = cutoffs;
    CsumFixedModulus cq(q);
    double phi_q = static_cast<double>(totient(q));
    KahanComplex acc;
    int64_t n = 1;
    for (int64_t x : cutoffs) {
        for (; n <= x; ++n) {
            double w = static_cast<double>(cq(n));
            if (w != 0.0) acc.add(F(n).to_complex() * w);
        }
        Complex avg = acc.value() / (phi_q * static_cast<double>(x));
        pl.partials.push_back(F.complex_valued() ? Value(avg) : Value(avg.real()));
    }
    return pl;
}

PartialLimit carmichael_partial(const ArithmeticFunction& F, int64_t q, int64_t x) {
    return carmichael_partial(F, q, cutoffs_up_to(x));
}

Value smooth_restriction(const ArithmeticFunction& Fp, int64_t P, int64_t a) {
    if (a < 1) throw std::invalid_argument("smooth_restriction: a must be >= 1");
    if (!is_prime(P)) throw std::invalid_argument("smooth_restriction: P must be prime");
    Value sum(0);
    for (int64_t d : divisors(factor(a)))
        if (smooth_part(d, P) == d) sum += Fp(d);
    return sum;
}

namespace {

// Exact Win_q^(P) for multiplicative F' with closed-form local tails:
// product over p <= P of sum_{K >= v_p(q)} F'(p^K)/p^K.
std::optional<Value> p_smooth_wintner_exact(const ArithmeticFunction& Fp, int64_t q, int64_t P) {
    if (Fp.multiplicative() && Fp.local()) {
        FactoredInteger fq = factor(q);
        Rational prod(1);
        for (int64_t p : primes_up_to(P)) prod *= Fp.local()->tail(p, fq.valuation(p));
        prod.canonicalize();
        return Value(prod);
    }
    if (Fp.squarefree_supported()) {
        // Finite sum over squarefree P-smooth multiples of q (none if q is
        // not squarefree): at most 2^pi(P) terms.
        FactoredInteger fq = factor(q);
        if (!fq.squarefree()) return Value(0);
        std::vector<int64_t> primes = primes_up_to(P);
        if (primes.size() > 24)
            throw std::invalid_argument("p_smooth_wintner: squarefree enumeration needs P <= 89");
        std::vector<int64_t> rest;
        for (int64_t p : primes)
            if (q % p != 0) rest.push_back(p);
        Value sum(0);
        for (uint64_t mask = 0; mask < (uint64_t(1) << rest.size()); ++mask) {
            int64_t d = q;
            bool overflow = false;
            for (size_t i = 0; i < rest.size(); ++i)
                if (mask & (uint64_t(1) << i)) {
                    if (d > INT64_MAX / rest[i]) { overflow = true; break; }
                    d *= rest[i];
                }
            if (overflow) continue;
            Value t = Fp(d);
            if (!t.is_zero()) sum += t / Value(d);
        }
        return sum;
    }
    return std::nullopt;
}

}  // namespace

PartialLimit p_smooth_wintner_partial(const ArithmeticFunction& Fp, int64_t q, int64_t P,
                                      int64_t X) {
    if (q < 1) throw std::invalid_argument("p_smooth_wintner: q must be >= 1");
    if (!is_prime(P)) throw std::invalid_argument("p_smooth_wintner: P must be prime");
    std::vector<int64_t> smooth = smooth_numbers(P, X);
    std::vector<int64_t> cutoffs = cutoffs_up_to(X);
    PartialLimit pl;
    pl.cutoffs = cutoffs;
    KahanComplex acc;
    size_t i = 0;
    for (int64_t x : cutoffs) {
        for (; i < smooth.size() && smooth[i] <= x; ++i) {
            if (smooth[i] % q != 0) continue;
            acc.add(Fp(smooth[i]).to_complex() / static_cast<double>(smooth[i]));
        }
        Complex v = acc.value();
        pl.partials.push_back(Fp.complex_valued() ? Value(v) : Value(v.real()));
    }
    return pl;
}

Coefficient p_smooth_wintner(const ArithmeticFunction& Fp, int64_t q, int64_t P, int64_t X) {
    if (q < 1) throw std::invalid_argument("p_smooth_wintner: q must be >= 1");
    if (!is_prime(P)) throw std::invalid_argument("p_smooth_wintner: P must be prime");
    // A multiple of a non-P-smooth q is never P-smooth.
    if (smooth_part(q, P) != q) return Coefficient{Value(0), std::nullopt};
    if (auto exact = p_smooth_wintner_exact(Fp, q, P)) return Coefficient{*exact, std::nullopt};
    PartialLimit pl = p_smooth_wintner_partial(Fp, q, P, X);
    return Coefficient{pl.last(), X};
}

SmoothCoefficient smooth_carmichael_coefficient(const ArithmeticFunction& F, int64_t q, int64_t P,
                                         int64_t X) {
    if (q < 1) throw std::invalid_argument("smooth_carmichael_coefficient: q must be >= 1");
    if (!is_prime(P)) throw std::invalid_argument("smooth_carmichael_coefficient: P must be prime");
    if (smooth_part(q, P) != q)
        throw std::invalid_argument("smooth_carmichael_coefficient: q must be P-smooth");
    Rational harmonic = smooth_harmonic(P);
    int64_t phi_q = totient(q);

    if (F.multiplicative() && F.local()) {
        // Euler route: sum_{t in (P)} F(t) c_q(t) / t factors over primes,
        // with the c_{p^j} stabilization giving exact finite heads.
        FactoredInteger fq = factor(q);
        Rational prod(1);
        for (int64_t p : primes_up_to(P)) {
            int lam = fq.valuation(p);
            Rational lp(0);
            // c_{p^lam}(p^K) vanishes for K < lam-1, is -p^(lam-1) at
            // K = lam-1 (where it cancels the p^-K weight), and sits at
            // phi(p^lam) from K = lam on.
            if (lam >= 1) {
                Value fval = F.local()->at(p, lam - 1);
                if (!fval.is_exact())
                    throw std::logic_error(
                        "smooth_carmichael_coefficient: exact route needs exact local values");
                lp -= fval.rat();
            }
            Rational phi_lam(static_cast<long>(lam > 0 ? ipow(p, lam - 1) * (p - 1) : 1));
            lp += phi_lam * F.local()->tail(p, lam);
            lp.canonicalize();
            prod *= lp;
        }
        Rational res = prod / (harmonic * Rational(static_cast<long>(phi_q)));
        res.canonicalize();
        return SmoothCoefficient{Value(res), 0.0};
    }

    std::vector<int64_t> smooth = smooth_numbers(P, X);
    CsumFixedModulus cq(q);
    KahanComplex acc;
    Kahan harmonic_partial;
    double max_abs_f = 0.0;
    for (int64_t t : smooth) {
        Complex ft = F(t).to_complex();
        max_abs_f = std::max(max_abs_f, std::abs(ft));
        harmonic_partial.add(1.0 / static_cast<double>(t));
        int64_t w = cq(t);
        if (w != 0) acc.add(ft * static_cast<double>(w) / static_cast<double>(t));
    }
    double h_full = harmonic.get_d();
    Complex val = acc.value() / (h_full * static_cast<double>(phi_q));
    double tail = max_abs_f * (1.0 - harmonic_partial.value() / h_full);
    Value out = F.complex_valued() ? Value(val) : Value(val.real());
    return SmoothCoefficient{out, tail};
}

HypothesisReport hypothesis_report(const ArithmeticFunction& Fp, int64_t X,
                                   const std::vector<int64_t>& smooth_ladder,
                                   const CoefficientTable* win) {
    HypothesisReport rep;
    std::vector<int64_t> cutoffs = cutoffs_up_to(X);
    auto sieve = default_sieve();
    if (X > sieve->bound) sieve = SieveTables::cached(X);

    Kahan wa, dh;
    Kahan etd_sum;
    std::vector<Kahan> wsa(smooth_ladder.size());
    rep.wa.cutoffs = rep.dh.cutoffs = rep.etd.cutoffs = cutoffs;
    for (int64_t P : smooth_ladder) {
        if (!is_prime(P)) throw std::invalid_argument("hypothesis_report: ladder must be primes");
        rep.wsa[P].cutoffs = cutoffs;
    }

    int64_t d = 1;
    for (int64_t x : cutoffs) {
        for (; d <= x; ++d) {
            double ad = Fp(d).abs();
            if (ad == 0.0) continue;
            // 2^omega(d) and the largest prime factor both fall out of spf.
            int64_t m = d;
            int omega = 0;
            int64_t largest = 1;
            while (m > 1) {
                int64_t p = sieve->spf[m];
                largest = std::max(largest, p);
                ++omega;
                while (m % p == 0) m /= p;
            }
            wa.add(ad / static_cast<double>(d));
            dh.add(std::ldexp(ad, omega) / static_cast<double>(d));
            etd_sum.add(ad);
            for (size_t i = 0; i < smooth_ladder.size(); ++i)
                if (largest > smooth_ladder[i]) wsa[i].add(ad / static_cast<double>(d));
        }
        rep.wa.partials.push_back(Value(wa.value()));
        rep.dh.partials.push_back(Value(dh.value()));
        rep.etd.partials.push_back(Value(etd_sum.value() / static_cast<double>(x)));
        for (size_t i = 0; i < smooth_ladder.size(); ++i)
            rep.wsa[smooth_ladder[i]].partials.push_back(Value(wsa[i].value()));
    }

    if (win) {
        PartialLimit dd;
        dd.cutoffs = cutoffs;
        Kahan acc;
        int64_t q = 1;
        for (int64_t x : cutoffs) {
            for (; q <= x; ++q) {
                if (!win->has(q)) continue;
                double w = win->value(q).abs();
                if (w != 0.0) acc.add(std::ldexp(w, factor(q).omega()));
            }
            dd.partials.push_back(Value(acc.value()));
        }
        rep.dd = dd;
    }
    return rep;
}

}  // namespace rsm
