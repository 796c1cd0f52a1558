#include "rsm/counterexample.hpp"

#include <numeric>
#include <stdexcept>

#include "rsm/factored.hpp"
#include "rsm/ramanujan.hpp"
#include "rsm/util.hpp"

namespace rsm {

void CounterexampleSpec::validate() const {
    if (p0 <= 2 || !is_prime(p0))
        throw std::invalid_argument("CounterexampleSpec: p0 must be an odd prime");
}

int64_t f0(const CounterexampleSpec& spec, int64_t a) {
    spec.validate();
    if (a < 1) throw std::invalid_argument("f0: a must be >= 1");
    // a = 1 gives c_{p0}(0) = phi(p0).
    return ramanujan_sum_kluyver(spec.p0, a - 1);
}

int64_t s_value(const CounterexampleSpec& spec, int64_t d) {
    spec.validate();
    if (d < 1) throw std::invalid_argument("s_value: d must be >= 1");
    int64_t sum = 0;
    for (int64_t a : divisors(factor(d)))
        if (a % spec.p0 == 1) sum += mobius(d / a);
    return sum;
}

int64_t f0_prime(const CounterexampleSpec& spec, int64_t d) {
    spec.validate();
    if (d < 1) throw std::invalid_argument("f0_prime: d must be >= 1");
    if (d == 1) return spec.p0 - 1;
    return spec.p0 * s_value(spec, d);
}

SCaseResult s_case(const CounterexampleSpec& spec, int64_t d) {
    spec.validate();
    if (d <= 1) throw std::invalid_argument("s_case: defined for d > 1 only");
    FactoredInteger fd = factor(d);
    int v = fd.valuation(spec.p0);
    SCaseResult r;
    r.value = s_value(spec, d);
    if (v >= 2) {
        r.c = SCase::two;
        if (r.value != 0) throw std::logic_error("s_case: case-two must vanish");
    } else if (v == 1) {
        r.c = SCase::one;
        r.reduced = s_value(spec, d / spec.p0);
        if (r.value != -r.reduced) throw std::logic_error("s_case: case-one reduction failed");
    } else {
        r.c = SCase::zero;
        for (const auto& [p, e] : fd.factors)
            if (p % spec.p0 == 1) r.forced_zero = true;
        if (r.forced_zero && r.value != 0)
            throw std::logic_error("s_case: residue-forced zero failed");
    }
    return r;
}

int64_t s_prime_power(const CounterexampleSpec& spec, int64_t p, int64_t K) {
    spec.validate();
    if (!is_prime(p) || p == spec.p0)
        throw std::invalid_argument("s_prime_power: p must be a prime different from p0");
    if (K < 1) throw std::invalid_argument("s_prime_power: K must be >= 1");
    int64_t hi = powmod_u64(p, K, spec.p0) == 1 ? 1 : 0;
    int64_t lo = powmod_u64(p, K - 1, spec.p0) == 1 ? 1 : 0;
    return hi - lo;
}

int64_t s_tilde(const CounterexampleSpec& spec, int64_t d) {
    spec.validate();
    if (d < 1) throw std::invalid_argument("s_tilde: d must be >= 1");
    FactoredInteger fd = factor(d);
    if (!fd.squarefree()) throw std::invalid_argument("s_tilde: d must be squarefree");
    int64_t sum = 0;
    for (int64_t a : divisors(fd))
        if (a % spec.p0 == 1) sum += mobius(a);
    // On squarefree d the two sums coincide up to the sign mu(d).
    if (std::abs(sum) != std::abs(s_value(spec, d)))
        throw std::logic_error("s_tilde: |S| = |S~| failed at d=" + std::to_string(d));
    return sum;
}

MeanValueRow mean_value_partial(const CounterexampleSpec& spec, int64_t x) {
    spec.validate();
    if (x < 10) throw std::invalid_argument("mean_value_partial: x must be >= 10");
    MeanValueRow row;
    row.x = x;
    int64_t raw = 0, flat = 0;
    for (int64_t d = 1; d <= x; ++d) {
        raw += std::abs(f0_prime(spec, d));
        if (d == 1) continue;
        // flat: every prime factor of d is neither 0 nor 1 mod p0.
        bool is_flat = true;
        for (const auto& [p, e] : factor(d).factors)
            if (p % spec.p0 == 0 || p % spec.p0 == 1) {
                is_flat = false;
                break;
            }
        if (is_flat) {
            flat += std::abs(s_value(spec, d));
            ++row.flat_count;
        }
    }
    row.raw_mean = static_cast<double>(raw) / static_cast<double>(x);
    row.flat_scaled =
        static_cast<double>(spec.p0 + 1) * static_cast<double>(flat) / static_cast<double>(x);
    return row;
}

ReefFailureReport reef_failure_demo(const CounterexampleSpec& spec, int64_t Q, int64_t A,
                                    int64_t partial_X) {
    spec.validate();
    if (Q < spec.p0) throw std::invalid_argument("reef_failure_demo: Q must be >= p0");
    ReefFailureReport rep;
    rep.win = CoefficientTable(TransformKind::wintner);

    // The Wintner transform of a basic-hypothesis correlation equals its
    // exact Carmichael transform, and F0(n) c_q(n) is periodic mod
    // lcm(p0, q): one period gives the coefficient exactly.
    for (int64_t q = 1; q <= Q; ++q) {
        int64_t L = std::lcm(spec.p0, q);
        CsumFixedModulus cq(q);
        int64_t acc = 0;
        for (int64_t n = 1; n <= L; ++n) acc += f0(spec, n) * cq(n);
        Rational car(static_cast<long>(acc), static_cast<long>(L * totient(q)));
        car.canonicalize();
        rep.win.set(q, Coefficient{Value(car), std::nullopt});
    }
    // Cross-check the closed form: -1/phi(p0) at q = p0, zero elsewhere.
    for (int64_t q = 1; q <= Q; ++q) {
        Value expect = q == spec.p0 ? Value::exact(-1, spec.p0 - 1) : Value(0);
        if (rep.win.value(q) != expect)
            throw std::logic_error("reef_failure_demo: Wintner table mismatch at q=" +
                                   std::to_string(q));
    }

    for (int64_t a = 1; a <= A; ++a) {
        Value expansion(0);
        for (int64_t q = 1; q <= Q; ++q) {
            Value w = rep.win.value(q);
            if (!w.is_zero()) expansion += w * Value(ramanujan_sum_hoelder(q, a));
        }
        Value r = Value(f0(spec, a)) - expansion;
        rep.residuals.push_back(r);
        if (r.is_zero()) rep.zero_residual_a.push_back(a);
    }
    rep.residual_at_1 = rep.residuals.front();

    auto f0p = ArithmeticFunction::from_rule(
        "F0'", [spec](int64_t d) { return Value(f0_prime(spec, d)); });
    rep.win_p0_partial = wintner_partial(f0p, spec.p0, partial_X);
    return rep;
}

}  // namespace rsm
