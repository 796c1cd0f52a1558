#include "rsm/builtins.hpp"

#include <cmath>
#include <stdexcept>

#include "rsm/counterexample.hpp"
#include "rsm/correlations.hpp"
#include "rsm/factored.hpp"
#include "rsm/util.hpp"

namespace rsm {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Rational rat(int64_t num, int64_t den = 1) {
    Rational r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

// sum_{K >= m} p^-(s K) as a rational, s in {1, 2}.
Rational geometric_tail(int64_t p, int m, int s) {
    int64_t ps = ipow(p, s);
    return rat(ps, ipow(p, s * m) * (ps - 1));
}

BuiltinFunction make_zero() {
    auto zero = ArithmeticFunction::from_finite_support("zero", {Value(0)});
    return {"zero", zero, zero};
}

BuiltinFunction make_one() {
    auto F = ArithmeticFunction::from_rule("one", [](int64_t) { return Value(1); });
    F.mark_multiplicative().with_local(DirichletLocal{
        [](int64_t, int) { return Value(1); },
        [](int64_t p, int m) { return rat(p, ipow(p, m) * (p - 1)); }});
    auto Fp = ArithmeticFunction::from_finite_support("delta_1", {Value(1)});
    Fp.mark_multiplicative().mark_squarefree_supported().with_local(DirichletLocal{
        [](int64_t, int K) { return Value(K == 0 ? 1 : 0); },
        [](int64_t, int m) { return Rational(m == 0 ? 1 : 0); }});
    return {"one", F, Fp};
}

BuiltinFunction make_identity() {
    auto F = ArithmeticFunction::from_rule("identity", [](int64_t n) { return Value(n); });
    F.mark_multiplicative();
    auto Fp = ArithmeticFunction::from_rule("phi", [](int64_t d) { return Value(totient(d)); });
    Fp.mark_multiplicative();
    return {"identity", F, Fp};
}

BuiltinFunction make_mobius() {
    auto F = ArithmeticFunction::from_rule("mobius", [](int64_t n) { return Value(mobius(n)); });
    F.mark_multiplicative().mark_squarefree_supported();
    // (mu * mu)(p^K): 1, -2, 1, then zero.
    auto Fp = ArithmeticFunction::from_rule("mobius'", [](int64_t d) {
        Value v(1);
        for (const auto& [p, e] : factor(d).factors) {
            if (e > 2) return Value(0);
            v *= Value(e == 1 ? -2 : 1);
        }
        return v;
    });
    Fp.mark_multiplicative().with_local(DirichletLocal{
        [](int64_t, int K) { return Value(K == 0 ? 1 : (K == 1 ? -2 : (K == 2 ? 1 : 0))); },
        [](int64_t p, int m) {
            Rational r(0);
            if (m <= 0) r += 1;
            if (m <= 1) r -= rat(2, p);
            if (m <= 2) r += rat(1, p * p);
            r.canonicalize();
            return r;
        }});
    return {"mobius", F, Fp};
}

BuiltinFunction make_phi_over_n() {
    auto F = ArithmeticFunction::from_rule(
        "phi-over-n", [](int64_t n) { return Value(rat(totient(n), n)); });
    F.mark_multiplicative().with_local(DirichletLocal{
        [](int64_t p, int K) { return K == 0 ? Value(1) : Value(rat(p - 1, p)); },
        [](int64_t p, int m) { return m == 0 ? rat(p + 1, p) : rat(1, ipow(p, m)); }});
    auto Fp = ArithmeticFunction::from_rule("mu(d)/d", [](int64_t d) {
        int64_t mu = mobius(d);
        return mu == 0 ? Value(0) : Value(rat(mu, d));
    });
    Fp.mark_multiplicative().mark_squarefree_supported().with_local(DirichletLocal{
        [](int64_t p, int K) {
            return K == 0 ? Value(1) : (K == 1 ? Value(rat(-1, p)) : Value(0));
        },
        [](int64_t p, int m) {
            if (m == 0) return rat(p * p - 1, p * p);
            if (m == 1) return rat(-1, p * p);
            return Rational(0);
        }});
    return {"phi-over-n", F, Fp};
}

BuiltinFunction make_sigma_over_n() {
    auto F = ArithmeticFunction::from_rule("sigma-over-n", [](int64_t n) {
        int64_t sigma = 0;
        for (int64_t d : divisors(factor(n))) sigma += d;
        return Value(rat(sigma, n));
    });
    F.mark_multiplicative().with_local(DirichletLocal{
        [](int64_t p, int K) {
            return Value(rat(ipow(p, K + 1) - 1, ipow(p, K) * (p - 1)));
        },
        [](int64_t p, int m) {
            // sum_{K >= m} sigma(p^K) p^(-2K)
            //   = (p/(p-1)) sum p^-K - (1/(p-1)) sum p^-2K over K >= m.
            Rational r = rat(p, p - 1) * geometric_tail(p, m, 1) -
                         rat(1, p - 1) * geometric_tail(p, m, 2);
            r.canonicalize();
            return r;
        }});
    auto Fp = ArithmeticFunction::from_rule("1/d", [](int64_t d) { return Value(rat(1, d)); });
    Fp.mark_multiplicative().with_local(DirichletLocal{
        [](int64_t p, int K) { return Value(rat(1, ipow(p, K))); },
        [](int64_t p, int m) { return geometric_tail(p, m, 2); }});
    return {"sigma-over-n", F, Fp};
}

Value von_mangoldt(int64_t n) {
    if (n < 2) return Value(0.0);
    FactoredInteger f = factor(n);
    if (f.factors.size() != 1) return Value(0.0);
    return Value(std::log(static_cast<double>(f.factors[0].first)));
}

BuiltinFunction make_lambda() {
    auto F = ArithmeticFunction::from_rule("lambda", von_mangoldt);
    auto Fp = ArithmeticFunction::from_rule("lambda'", [](int64_t d) {
        Kahan acc;
        for (int64_t a : divisors(factor(d))) {
            Value la = von_mangoldt(a);
            if (!la.is_zero()) acc.add(la.to_double() * static_cast<double>(mobius(d / a)));
        }
        return Value(acc.value());
    });
    Fp.enable_memo();
    return {"lambda", F, Fp};
}

BuiltinFunction make_lambda_truncated(int64_t N) {
    if (N < 1) throw std::invalid_argument("lambda-truncated: N must be >= 1");
    std::string name = "lambda-truncated:" + std::to_string(N);
    auto F = ArithmeticFunction::from_rule(
        name, [N](int64_t m) { return Value(lambda_truncated(N, m)); });
    // Lambda_N is the divisor sum of -mu(d) log d over d <= N.
    auto Fp = ArithmeticFunction::from_rule(name + "'", [N](int64_t d) {
        if (d > N || d == 1) return Value(0.0);
        int64_t mu = mobius(d);
        if (mu == 0) return Value(0.0);
        return Value(-static_cast<double>(mu) * std::log(static_cast<double>(d)));
    });
    return {name, F, Fp};
}

BuiltinFunction make_exp(int64_t q, int64_t j) {
    if (q < 1) throw std::invalid_argument("exp: q must be >= 1");
    std::string name = "exp:" + std::to_string(q) + ":" + std::to_string(j);
    auto F = ArithmeticFunction::from_rule(name, [q, j](int64_t a) {
        int64_t r = a % q * (j % q) % q;
        if (r < 0) r += q;
        return Value(std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(q)));
    });
    F.mark_complex_valued();
    ArithmeticFunction Fcopy = F;
    auto Fp = ArithmeticFunction::from_rule(name + "'", [Fcopy](int64_t d) {
        KahanComplex acc;
        for (int64_t a : divisors(factor(d)))
            acc.add(Fcopy(a).to_complex() * static_cast<double>(mobius(d / a)));
        return Value(acc.value());
    });
    Fp.mark_complex_valued().enable_memo();
    return {name, F, Fp};
}

BuiltinFunction make_counterexample(int64_t p0) {
    CounterexampleSpec spec{p0};
    spec.validate();
    std::string name = "counterexample:" + std::to_string(p0);
    auto F = ArithmeticFunction::from_rule(name, [spec](int64_t a) { return Value(f0(spec, a)); });
    auto Fp = ArithmeticFunction::from_rule(name + "'",
                                            [spec](int64_t d) { return Value(f0_prime(spec, d)); });
    return {name, F, Fp};
}

}  // namespace

BuiltinFunction make_builtin(const std::string& spec) {
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        size_t start = 0;
        while (true) {
            size_t colon = s.find(':', start);
            parts.push_back(s.substr(start, colon - start));
            if (colon == std::string::npos) break;
            start = colon + 1;
        }
        return parts;
    };
    std::vector<std::string> parts = split(spec);
    const std::string& head = parts[0];
    auto arg = [&](size_t i) -> int64_t {
        if (i >= parts.size())
            throw std::invalid_argument("builtin " + head + ": missing parameter");
        return std::stoll(parts[i]);
    };

    if (head == "zero") return make_zero();
    if (head == "one") return make_one();
    if (head == "identity") return make_identity();
    if (head == "mobius") return make_mobius();
    if (head == "phi-over-n") return make_phi_over_n();
    if (head == "sigma-over-n") return make_sigma_over_n();
    if (head == "lambda") return make_lambda();
    if (head == "lambda-truncated") return make_lambda_truncated(arg(1));
    if (head == "exp") return make_exp(arg(1), arg(2));
    if (head == "counterexample") return make_counterexample(arg(1));
    throw std::invalid_argument("unknown builtin function: " + spec);
}

std::vector<std::string> builtin_names() {
    return {"zero",   "one",    "identity",           "mobius",     "phi-over-n",
            "sigma-over-n", "lambda", "lambda-truncated:<N>", "exp:<q>:<j>", "counterexample:<p0>"};
}

}  // namespace rsm
