#include <doctest.h>

#include <cmath>
#include <memory>

#include "oracles.hpp"
#include "rsm/builtins.hpp"
#include "rsm/ramanujan.hpp"
#include "rsm/smooth.hpp"
#include "rsm/transforms.hpp"
#include "rsm/util.hpp"

using namespace rsm;

namespace {

constexpr double kZeta2 = 1.6449340668482264;

// sigma(n)/n tabulated as doubles via a divisor sieve; the exact builtin is
// too slow for million-term averages.
ArithmeticFunction sigma_over_n_table(int64_t X) {
    auto table = std::make_shared<std::vector<double>>(X + 1, 0.0);
    for (int64_t d = 1; d <= X; ++d)
        for (int64_t m = d; m <= X; m += d) (*table)[m] += 1.0 / static_cast<double>(d);
    return ArithmeticFunction::from_rule("sigma-over-n:sieved",
                                         [table](int64_t n) { return Value((*table)[n]); });
}

}  // namespace

TEST_CASE("wintner partial sums") {
    auto delta1 = make_builtin("one").F_prime;
    PartialLimit zero = wintner_partial(delta1, 2, 1 << 12);
    for (const Value& v : zero.partials) CHECK(v.is_zero());

    auto fp = make_builtin("sigma-over-n").F_prime;
    PartialLimit z2 = wintner_partial(fp, 1, 1 << 20);
    CHECK(z2.partials.size() >= 3);
    CHECK(z2.last().to_double() == doctest::Approx(kZeta2).epsilon(1e-5));

    PartialLimit z2q2 = wintner_partial(fp, 2, 1 << 20);
    CHECK(z2q2.last().to_double() == doctest::Approx(kZeta2 / 4).epsilon(1e-5));
}

TEST_CASE("carmichael partial averages") {
    auto zero = make_builtin("zero").F;
    for (const Value& v : carmichael_partial(zero, 3, 1 << 12).partials) CHECK(v.is_zero());

    auto sig = sigma_over_n_table(1 << 17);
    PartialLimit car = carmichael_partial(sig, 1, 1 << 17);
    CHECK(car.last().to_double() == doctest::Approx(kZeta2).epsilon(1e-3));

    // the Carmichael average of e_5(2.) at q = 5 tends to 1/4.
    auto e52 = make_builtin("exp:5:2").F;
    PartialLimit lem7 = carmichael_partial(e52, 5, 100000);
    CHECK(std::abs(lem7.last().to_complex() - Complex(0.25, 0.0)) < 1e-3);
}

TEST_CASE("Wintner equals Carmichael under the summable-transform hypothesis") {
    const int64_t X = 1 << 20;
    auto sig_table = sigma_over_n_table(X);
    auto fp = make_builtin("sigma-over-n").F_prime;
    for (int64_t q = 1; q <= 10; ++q) {
        double car = carmichael_partial(sig_table, q, X).last().to_double();
        double win = wintner_partial(fp, q, X).last().to_double();
        CHECK(std::abs(car - win) <= 1e-2);
    }
}

TEST_CASE("proximity of averages to transform partial sums decays in x") {
    auto sig_table = sigma_over_n_table(1 << 15);
    auto fp = make_builtin("sigma-over-n").F_prime;
    const int64_t q = 2;
    auto bracket = [&](int64_t x) {
        double avg = carmichael_partial(sig_table, q, x).last().to_double();
        double win = wintner_partial(fp, q, x).last().to_double();
        return std::abs(avg - win);
    };
    CHECK(bracket(1 << 15) < bracket(1 << 14));
}

TEST_CASE("smooth restriction") {
    auto id = make_builtin("identity");
    // P >= a: every divisor is smooth, the restriction is F itself.
    for (int64_t a : {1, 5, 12}) CHECK(smooth_restriction(id.F_prime, 13, a) == Value(a));
    // F = id, a = 6, P = 2: phi(1) + phi(2) = 2.
    CHECK(smooth_restriction(id.F_prime, 2, 6) == Value(2));
    CHECK(smooth_restriction(id.F_prime, 2, 1) == Value(1));
}

TEST_CASE("p-smooth Wintner coefficients") {
    SUBCASE("support {1} vanishes for q > 1") {
        auto delta1 = make_builtin("one").F_prime;
        Coefficient c = p_smooth_wintner(delta1, 3, 5, 1 << 10);
        CHECK(c.value.is_zero());
        CHECK(p_smooth_wintner(delta1, 1, 5, 1 << 10).value == Value(1));
    }
    SUBCASE("exact Euler route: sigma-over-n at q = 1, P = 3 gives 3/2") {
        auto fp = make_builtin("sigma-over-n").F_prime;
        Coefficient c = p_smooth_wintner(fp, 1, 3, 1 << 10);
        CHECK(c.exact());
        CHECK(c.value == Value::exact(3, 2));
    }
    SUBCASE("a multiple of a non-smooth q is never smooth") {
        auto fp = make_builtin("sigma-over-n").F_prime;
        CHECK(p_smooth_wintner(fp, 7, 5, 1 << 10).value.is_zero());
    }
    SUBCASE("exact route agrees with direct smooth enumeration") {
        auto fp = make_builtin("sigma-over-n").F_prime;
        for (int64_t q : {1, 2, 4, 9, 12}) {
            Coefficient exact = p_smooth_wintner(fp, q, 5, 1 << 20);
            REQUIRE(exact.exact());
            PartialLimit direct = p_smooth_wintner_partial(fp, q, 5, 1 << 20);
            CHECK(std::abs(exact.value.to_double() - direct.last().to_double()) < 1e-4);
        }
    }
    SUBCASE("squarefree-supported transforms finish exactly (prime-power blindness)") {
        auto fp = make_builtin("phi-over-n").F_prime;  // mu(d)/d
        Coefficient c = p_smooth_wintner(fp, 2, 7, 1 << 10);
        CHECK(c.exact());
        // Win_2^(7) of mu(d)/d: -1/2 prod_{p in {3,5,7}} (1 - 1/p^2)... via
        // the local tails: tail(2,1) tail(3,0) tail(5,0) tail(7,0).
        Rational expect = Rational(-1, 4) * Rational(8, 9) * Rational(24, 25) * Rational(48, 49);
        expect.canonicalize();
        CHECK(c.value == Value(expect));
    }
    SUBCASE("bare squarefree flag without local data still finishes exactly") {
        // F'(d) = mu^2(d)/d^2: no closed-form tails supplied, so the
        // 2^pi(P)-term enumeration is the only exact route.
        auto fp = ArithmeticFunction::from_rule("mu^2/d^2", [](int64_t d) {
            return mobius(d) == 0 ? Value(0) : Value::exact(1, d * d);
        });
        fp.mark_squarefree_supported();
        for (int64_t q : {1, 2, 6, 10}) {
            Coefficient c = p_smooth_wintner(fp, q, 5, 1 << 4);
            CHECK(c.exact());
            Value manual(0);
            for (int64_t d : {1, 2, 3, 5, 6, 10, 15, 30})
                if (d % q == 0) manual += Value::exact(1, d * d * d);
            CHECK(c.value == manual);
        }
        // non-squarefree q has no squarefree multiples
        CHECK(p_smooth_wintner(fp, 4, 5, 1 << 4).value.is_zero());
    }
}

TEST_CASE("local expansion reproduces the function exactly once P >= a") {
    // F(a) = sum over P-smooth q of Win_q^(P) c_q(a): finite through the
    // vertical limit, and exact rationals end to end for sigma(n)/n.
    auto b = make_builtin("sigma-over-n");
    for (int64_t P : {int64_t(11), int64_t(23)}) {
        auto coeffs = RamanujanCoefficients::from_rule([&b, P](int64_t q) {
            return p_smooth_wintner(b.F_prime, q, P, 1).value;
        });
        for (int64_t a = 1; a <= std::min<int64_t>(P, 20); ++a) {
            Value expansion = smooth_ramanujan_sum(coeffs, a, P);
            REQUIRE(expansion.is_exact());
            CHECK(expansion == b.F(a));
        }
    }
}

TEST_CASE("pointwise local expansion coefficients (smooth Carmichael route)") {
    SUBCASE("constant function at q = 1 is exactly 1") {
        auto one = make_builtin("one").F;
        SmoothCoefficient c = smooth_carmichael_coefficient(one, 1, 7, 1 << 10);
        CHECK(c.value == Value(1));
        CHECK(c.tail_estimate == 0.0);
    }
    SUBCASE("exact agreement with the smooth Wintner transform") {
        // smooth Carmichael/Wintner coincidence, exact on both routes.
        auto b = make_builtin("sigma-over-n");
        for (int64_t P : {3, 5, 11})
            for (int64_t q : {1, 2, 4, 6, 9}) {
                if (!oracle::is_smooth(q, P)) continue;
                SmoothCoefficient car = smooth_carmichael_coefficient(b.F, q, P, 1);
                Coefficient win = p_smooth_wintner(b.F_prime, q, P, 1);
                REQUIRE(car.value.is_exact());
                REQUIRE(win.exact());
                CHECK(car.value == win.value);
            }
    }
    SUBCASE("truncated route carries an honest tail estimate") {
        auto mob = make_builtin("mobius");
        SmoothCoefficient lo = smooth_carmichael_coefficient(mob.F, 1, 2, 1 << 10);
        SmoothCoefficient hi = smooth_carmichael_coefficient(mob.F, 1, 2, 1 << 16);
        CHECK(hi.tail_estimate < lo.tail_estimate);
        CHECK(std::abs(hi.value.to_double() - lo.value.to_double()) <= lo.tail_estimate * 1.01);
    }
}

TEST_CASE("hypothesis diagnostics") {
    SUBCASE("point support: every series is constant at its first value") {
        auto delta1 = make_builtin("one").F_prime;
        HypothesisReport rep = hypothesis_report(delta1, 1 << 13);
        for (const auto& pl : {rep.wa, rep.dh, rep.etd}) {
            CHECK(pl.partials.front().to_double() * 0 == 0);  // finite
        }
        CHECK(rep.wa.partials.back().to_double() == rep.wa.partials.front().to_double());
        CHECK(rep.dh.partials.back().to_double() == rep.dh.partials.front().to_double());
        // ETD averages shrink as 1/x even for point support.
        CHECK(rep.etd.partials.back().to_double() < rep.etd.partials.front().to_double());
    }
    SUBCASE("F'(d) = 1/d: WA partials approach zeta(2)") {
        auto fp = make_builtin("sigma-over-n").F_prime;
        HypothesisReport rep = hypothesis_report(fp, 1 << 20);
        CHECK(rep.wa.partials.back().to_double() == doctest::Approx(kZeta2).epsilon(1e-4));
        // DH = sum 2^omega(d)/d^2 = zeta(2)^2/zeta(4) at the limit.
        CHECK(rep.dh.partials.back().to_double() ==
              doctest::Approx(kZeta2 * kZeta2 / 1.0823232337111382).epsilon(1e-3));
    }
    SUBCASE("slow decay: F'(d) = 1/log d fails WA while ETD still vanishes") {
        auto slow = ArithmeticFunction::from_rule("1/log", [](int64_t d) {
            return Value(d == 1 ? 0.0 : 1.0 / std::log(static_cast<double>(d)));
        });
        HypothesisReport rep = hypothesis_report(slow, 1 << 18);
        size_t k = rep.wa.partials.size();
        double wa_last_inc =
            rep.wa.partials[k - 1].to_double() - rep.wa.partials[k - 2].to_double();
        CHECK(wa_last_inc > 0.03);  // increments do not die out: WA diverges
        CHECK(rep.etd.partials[k - 1].to_double() < rep.etd.partials[0].to_double());
    }
    SUBCASE("WSA ladder shrinks as P grows") {
        auto fp = make_builtin("sigma-over-n").F_prime;
        HypothesisReport rep = hypothesis_report(fp, 1 << 16, {2, 3, 5, 7, 11, 13});
        double prev = 1e300;
        for (auto& [P, pl] : rep.wsa) {
            double v = pl.partials.back().to_double();
            CHECK(v < prev);
            prev = v;
        }
    }
    SUBCASE("DD series appears when a coefficient table is supplied") {
        CoefficientTable win(TransformKind::wintner);
        win.set_rule([](int64_t q) { return Coefficient{Value::exact(1, q * q), std::nullopt}; });
        auto fp = make_builtin("sigma-over-n").F_prime;
        HypothesisReport rep = hypothesis_report(fp, 1 << 12, {2, 3}, &win);
        REQUIRE(rep.dd.has_value());
        // sum 2^omega(q)/q^2 converges: increments decay.
        CHECK(rep.dd->last_increment() < 0.01);
    }
}

TEST_CASE("cutoff ladders") {
    auto cs = default_cutoffs();
    CHECK(cs.front() == 1 << 10);
    CHECK(cs.back() == 1 << 20);
    for (size_t i = 1; i < cs.size(); ++i) CHECK(cs[i] == 2 * cs[i - 1]);
    CHECK(doubling_cutoffs(100, 100).size() >= 3);
}
