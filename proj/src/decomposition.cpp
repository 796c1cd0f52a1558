#include "rsm/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rsm/factored.hpp"
#include "rsm/ramanujan.hpp"
#include "rsm/smooth.hpp"
#include "rsm/util.hpp"

namespace rsm {

std::vector<int64_t> sifted_numbers(int64_t P, int64_t X) {
    if (!is_prime(P)) throw std::invalid_argument("sifted_numbers: P must be prime");
    auto sieve = default_sieve();
    if (X > sieve->bound) sieve = SieveTables::cached(X);
    std::vector<int64_t> out;
    for (int64_t r = 2; r <= X; ++r)
        if (sieve->spf[r] > P) out.push_back(r);
    return out;
}

PartialLimit irregular_series(const ArithmeticFunction& Fp, int64_t d, int64_t P, int64_t X) {
    if (d < 1) throw std::invalid_argument("irregular_series: d must be >= 1");
    std::vector<int64_t> cutoffs = doubling_cutoffs(std::min<int64_t>(X, 1 << 10), X);
    std::vector<int64_t> sifted = sifted_numbers(P, X);
    PartialLimit pl;
    pl.cutoffs = cutoffs;
    KahanComplex acc;
    size_t i = 0;
    for (int64_t x : cutoffs) {
        for (; i < sifted.size() && sifted[i] <= x; ++i) {
            Value v = Fp(d * sifted[i]);
            if (!v.is_zero()) acc.add(v.to_complex() / static_cast<double>(sifted[i]));
        }
        Complex v = acc.value();
        pl.partials.push_back(Fp.complex_valued() ? Value(v) : Value(v.real()));
    }
    return pl;
}

namespace {

// sum over squarefree P-smooth K of mu(K) Win_{dK}: subsets of the primes
// up to P: mu kills every non-squarefree K, so the sum is finite.
// Guarded at P <= 31.
Value squarefree_k_sum(const std::function<Value(int64_t)>& win_at, int64_t d, int64_t P) {
    std::vector<int64_t> primes = primes_up_to(P);
    if (primes.size() > 11)
        throw std::invalid_argument("k-sum enumeration requires P <= 31");
    Value sum(0);
    for (uint64_t mask = 0; mask < (uint64_t(1) << primes.size()); ++mask) {
        int64_t K = 1;
        int bits = 0;
        for (size_t i = 0; i < primes.size(); ++i)
            if (mask & (uint64_t(1) << i)) K *= primes[i], ++bits;
        Value w = win_at(d * K);
        if (!w.is_zero()) sum += (bits % 2 == 0) ? w : -w;
    }
    return sum;
}

// Exact sifted sum for finite-support F', double-precision otherwise.
Value irregular_value(const ArithmeticFunction& Fp, int64_t d, int64_t P, int64_t X) {
    auto bound = Fp.finite_support_bound();
    if (bound) {
        Value sum(0);
        for (int64_t r : sifted_numbers(P, std::min(X, *bound / d + 1)))
            if (d <= *bound / r) {
                Value v = Fp(d * r);
                if (!v.is_zero()) sum += v / Value(r);
            }
        return sum;
    }
    return irregular_series(Fp, d, P, X).last();
}

}  // namespace

Value transform_decomposition_residual(const ArithmeticFunction& Fp, const CoefficientTable& win,
                                       int64_t d, int64_t P, int64_t X) {
    if (d < 1) throw std::invalid_argument("transform residual: d must be >= 1");
    if (!is_prime(P)) throw std::invalid_argument("transform residual: P must be prime");
    Value ksum = squarefree_k_sum([&win](int64_t q) { return win.value(q); }, d, P);
    Value irr = irregular_value(Fp, d, P, X);
    return Fp(d) - (Value(d) * ksum - irr);
}

Value expansion_decomposition_residual(const ArithmeticFunction& F, const ArithmeticFunction& Fp,
                                       const CoefficientTable& win, int64_t a, int64_t P,
                                       int64_t X) {
    if (a < 1) throw std::invalid_argument("expansion residual: a must be >= 1");
    if (!is_prime(P) || P < a)
        throw std::invalid_argument("expansion residual: needs a prime P >= a");
    auto coeffs = RamanujanCoefficients::from_rule([&win](int64_t q) { return win.value(q); });
    Value expansion = smooth_ramanujan_sum(coeffs, a, P);
    Value irr(0);
    for (int64_t d : divisors(factor(a))) irr += irregular_value(Fp, d, P, X);
    return F(a) - (expansion - irr);
}

int64_t FinWinRecord::prime() const {
    if (!range || *range < 2) return 2;
    return prev_prime(*range);
}

Value FinWinRecord::value(int64_t q) const { return win.value_or_zero(q); }

FinWinRecord detect_fin_win(const CoefficientTable& table, int64_t scan_bound) {
    FinWinRecord rec;
    rec.scan_bound = scan_bound;
    rec.win = CoefficientTable(table.kind());
    for (int64_t q = 1; q <= scan_bound; ++q) {
        if (!table.has(q)) continue;
        Coefficient c = table.at(q);
        if (c.value.is_zero()) continue;
        rec.win.set(q, c);
        rec.range = q;
    }
    return rec;
}

FaiSplit::FaiSplit(ArithmeticFunction f_prime, FinWinRecord record)
    : f_prime_(std::move(f_prime)), record_(std::move(record)) {
    if (!record_.range)
        throw std::invalid_argument("fai_split: Wintner transform has empty detected support");
}

FaiSplit fai_split(const ArithmeticFunction& f_prime, FinWinRecord record) {
    return FaiSplit(f_prime, std::move(record));
}

Complex FaiSplit::analytic(double a) const {
    // A_F(a) = sum_{q <= Q_F} Win_q sum_{j in Z_q^*} e^(2 pi i j a / q),
    // entire in a.
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    KahanComplex acc;
    for (const auto& [q, coef] : record_.win.entries()) {
        if (coef.value.is_zero()) continue;
        Complex w = coef.value.to_complex();
        for (int64_t j = 1; j <= q; ++j) {
            if (std::gcd(j, q) != 1) continue;
            acc.add(w * std::polar(1.0, kTwoPi * static_cast<double>(j) * a /
                                            static_cast<double>(q)));
        }
    }
    return acc.value();
}

Value FaiSplit::analytic_at(int64_t a) const {
    Value sum(0);
    for (const auto& [q, coef] : record_.win.entries())
        sum += coef.value * Value(ramanujan_sum_hoelder(q, a));
    return sum;
}

Value FaiSplit::irregular(int64_t a) const {
    // The transform-level decomposition rearranged:
    // Irr_d = d * sum_K mu(K) Win_{dK} - F'(d), then
    // summed over d | a. Exact whenever the table and F' are exact.
    int64_t P = record_.prime();
    auto win_at = [this](int64_t q) { return record_.value(q); };
    Value sum(0);
    for (int64_t d : divisors(factor(a)))
        sum += Value(d) * squarefree_k_sum(win_at, d, P) - f_prime_(d);
    return sum;
}

PartialLimit FaiSplit::irregular_partials(int64_t a, int64_t X) const {
    int64_t P = record_.prime();
    PartialLimit total;
    bool first = true;
    for (int64_t d : divisors(factor(a))) {
        PartialLimit part = irregular_series(f_prime_, d, P, X);
        if (first) {
            total = part;
            first = false;
        } else {
            for (size_t i = 0; i < total.partials.size(); ++i)
                total.partials[i] += part.partials[i];
        }
    }
    return total;
}

ReefReport reef_check(const ArithmeticFunction& F, const CoefficientTable& win, int64_t Q,
                      int64_t A) {
    ReefReport rep;
    std::vector<std::pair<int64_t, Value>> coefs;
    for (int64_t q = 1; q <= Q; ++q) {
        Value w = win.value_or_zero(q);
        if (!w.is_zero()) {
            coefs.emplace_back(q, w);
            rep.ell_lower_bound = q;
        }
    }
    for (int64_t a = 1; a <= A; ++a) {
        Value expansion(0);
        for (const auto& [q, w] : coefs) expansion += w * Value(ramanujan_sum_hoelder(q, a));
        Value r = F(a) - expansion;
        rep.residuals.push_back(r);
        if (r.abs() > rep.max_residual) {
            rep.max_residual = r.abs();
            rep.argmax = a;
        }
    }
    ArithmeticFunction Fp = eratosthenes_transform(F, A);
    for (int64_t d = 1; d <= A; ++d)
        if (Fp(d).abs() > 1e-12) rep.d_lower_bound = d;
    return rep;
}

Value multiplicative_irr_check(const ArithmeticFunction& Fp, int64_t d, int64_t P, int64_t X) {
    if (!Fp.multiplicative())
        throw std::invalid_argument("multiplicative_irr_check: F' must be flagged multiplicative");
    if (smooth_part(d, P) != d)
        throw std::invalid_argument("multiplicative_irr_check: d must be P-smooth");
    if (d == 1) return Value(0);
    Value irr_d = irregular_series(Fp, d, P, X).last();
    Value irr_1 = irregular_series(Fp, 1, P, X).last();
    return abs_value(irr_d - Fp(d) * irr_1);
}

SiftedEulerProduct sifted_euler_product(const ArithmeticFunction& Fp, int64_t P,
                                        int64_t prime_bound) {
    if (!Fp.multiplicative() || !Fp.squarefree_supported())
        throw std::invalid_argument(
            "sifted_euler_product: needs F' multiplicative and squarefree-supported");
    if (!is_prime(P)) throw std::invalid_argument("sifted_euler_product: P must be prime");
    SiftedEulerProduct out;
    std::vector<int64_t> cutoffs =
        doubling_cutoffs(std::min<int64_t>(prime_bound, std::max<int64_t>(P + 1, 64)), prime_bound);
    out.log_partials.cutoffs = cutoffs;
    Kahan logs;
    std::vector<int64_t> primes = primes_up_to(prime_bound);
    size_t i = 0;
    while (i < primes.size() && primes[i] <= P) ++i;
    for (int64_t x : cutoffs) {
        for (; i < primes.size() && primes[i] <= x; ++i) {
            double term = 1.0 + Fp(primes[i]).to_double() / static_cast<double>(primes[i]);
            if (term <= 0.0)
                throw std::domain_error("sifted_euler_product: non-positive Euler factor");
            logs.add(std::log(term));
        }
        out.log_partials.partials.push_back(Value(logs.value()));
    }
    out.value = std::exp(logs.value());
    return out;
}

}  // namespace rsm
