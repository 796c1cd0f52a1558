#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "rsm/builtins.hpp"
#include "rsm/correlations.hpp"
#include "rsm/factored.hpp"
#include "rsm/ramanujan.hpp"
#include "rsm/util.hpp"

using namespace rsm;

namespace {

CorrelationSpec csum_shift_spec(int64_t q0, int64_t n0, int64_t Q, int64_t N) {
    CorrelationSpec spec;
    spec.Q = Q;
    spec.N = N;
    spec.f = ArithmeticFunction::from_rule("ind",
                                           [n0](int64_t n) { return Value(n == n0 ? 1 : 0); });
    spec.g_prime = ArithmeticFunction::from_rule("g0'", [q0](int64_t d) {
        // g0 = c_{q0}: g0'(d) = d mu(q0/d) on d | q0.
        if (q0 % d != 0) return Value(0);
        return Value(d * mobius(q0 / d));
    });
    return spec;
}

}  // namespace

TEST_CASE("direct correlation") {
    SUBCASE("zero f") {
        CorrelationSpec spec;
        spec.Q = 3;
        spec.N = 20;
        spec.f = make_builtin("zero").F;
        spec.g_prime = make_builtin("one").F;
        for (int64_t a = 1; a <= 5; ++a) CHECK(correlate(spec, a).is_zero());
    }
    SUBCASE("indicator against a Ramanujan-sum divisor structure") {
        CorrelationSpec spec = csum_shift_spec(6, 4, 6, 50);
        for (int64_t a = 1; a <= 30; ++a)
            CHECK(correlate(spec, a) == Value(ramanujan_sum(6, 4 + a)));
    }
    SUBCASE("f = g' = 1, Q = 2, N = 10, a = 1") {
        CorrelationSpec spec;
        spec.Q = 2;
        spec.N = 10;
        spec.f = make_builtin("one").F;
        spec.g_prime = make_builtin("one").F;
        // sum over n <= 10 of (1 + [2 | n+1]) = 10 + 5
        CHECK(correlate(spec, 1) == Value(15));
    }
    SUBCASE("Q > N is rejected") {
        CorrelationSpec spec;
        spec.Q = 10;
        spec.N = 5;
        spec.f = make_builtin("one").F;
        spec.g_prime = make_builtin("one").F;
        CHECK_THROWS_AS(correlate(spec, 1), std::invalid_argument);
    }
}

TEST_CASE("truncated von Mangoldt") {
    CHECK(lambda_truncated(100, 1) == 0.0);
    CHECK(lambda_truncated(10, 8) == doctest::Approx(std::log(2.0)));
    CHECK(lambda_truncated(10, 6) == doctest::Approx(0.0));
    auto lam = make_builtin("lambda").F;
    for (int64_t m = 1; m <= 2000; ++m)
        CHECK(lambda_truncated(2000, m) == doctest::Approx(lam(m).to_double()).epsilon(1e-12));
}

TEST_CASE("ghat") {
    auto delta1 = make_builtin("one").F_prime;
    CHECK(g_hat(delta1, 10, 1) == Value(1));
    for (int64_t q = 2; q <= 12; ++q) CHECK(g_hat(delta1, 10, q).is_zero());

    // Lambda_N style: ghat(q) = -sum_{d <= Q, q | d} mu(d) log d / d.
    auto lam_fp = make_builtin("lambda-truncated:64").F_prime;
    for (int64_t q = 1; q <= 8; ++q) {
        Kahan direct;
        for (int64_t d = q; d <= 64; d += q) {
            int64_t mu = oracle::brute_mobius(d);
            if (mu != 0 && d > 1)
                direct.add(-static_cast<double>(mu) * std::log(static_cast<double>(d)) /
                           static_cast<double>(d));
        }
        CHECK(g_hat(lam_fp, 64, q).to_double() == doctest::Approx(direct.value()));
    }
}

TEST_CASE("fixed-length expansion right-hand side and the error term") {
    SUBCASE("the no-reef spec at p0 = 5") {
        CorrelationSpec spec = csum_shift_spec(5, 4, 6, 200);
        CHECK(reef_rhs(spec, 1) == Value::exact(1, 4));
        CHECK(error_term(spec, 1) == Value::exact(15, 4));
    }
    SUBCASE("g' concentrated at 1 reduces to the plain mean") {
        CorrelationSpec spec;
        spec.Q = 5;
        spec.N = 30;
        std::vector<Value> fv;
        for (int64_t n = 1; n <= 30; ++n) fv.push_back(Value::exact(n % 7, 3));
        spec.f = ArithmeticFunction::from_finite_support("f", std::move(fv));
        spec.g_prime = make_builtin("one").F_prime;  // delta_1
        Value fsum(0);
        for (int64_t n = 1; n <= 30; ++n) fsum += spec.f(n);
        for (int64_t a = 1; a <= 10; ++a) {
            CHECK(reef_rhs(spec, a) == fsum);
            CHECK(error_term(spec, a).is_zero());  // g is constant 1
        }
    }
    SUBCASE("full periods: constant f over a period multiple has exact REEF") {
        CorrelationSpec spec;
        spec.Q = 6;
        spec.N = std::lcm(std::lcm(int64_t(4), int64_t(5)), int64_t(6)) * 4;  // 240
        spec.f = make_builtin("one").F;
        std::mt19937_64 rng(31);
        std::vector<Value> gv;
        for (int i = 0; i < 6; ++i) gv.push_back(Value(int64_t(rng() % 11) - 5));
        spec.g_prime = ArithmeticFunction::from_finite_support("g'", std::move(gv));
        for (int64_t a = 1; a <= 200; ++a) {
            INFO("a=", a);
            CHECK(error_term(spec, a).is_zero());
        }
    }
}

TEST_CASE("exponential sums") {
    auto zero = make_builtin("zero").F;
    CHECK(std::abs(exp_sum(zero, 25, 1, 4)) == 0.0);
    auto one = make_builtin("one").F;
    CHECK(exp_sum(one, 17, 0, 3).real() == doctest::Approx(17.0));
    CHECK(std::abs(exp_sum(one, 4, 1, 2)) < 1e-12);  // alternating
    CHECK_THROWS_AS(exp_sum(one, 10, 5, 3), std::invalid_argument);
}

TEST_CASE("singular series") {
    SUBCASE("twin prime constant") {
        double v = singular_series(2, SingularSeriesMethod::product, 1000000);
        CHECK(v == doctest::Approx(1.32032).epsilon(1e-4));
    }
    SUBCASE("odd shifts rejected") {
        CHECK_THROWS_AS(singular_series(3, SingularSeriesMethod::product, 10000),
                        std::invalid_argument);
    }
    SUBCASE("series route matches product route") {
        for (int64_t two_k : {2, 4, 6, 10, 12, 30}) {
            double p = singular_series(two_k, SingularSeriesMethod::product, 1000000);
            double s = singular_series(two_k, SingularSeriesMethod::series, 100000);
            CHECK(std::abs(p - s) < 1e-3);
        }
    }
    SUBCASE("odd prime factors scale the constant") {
        double s2 = singular_series(2, SingularSeriesMethod::product, 100000);
        double s6 = singular_series(6, SingularSeriesMethod::product, 100000);
        // p = 3 flips from (1 - 1/4) to (1 + 1/2): ratio exactly 2.
        CHECK(s6 / s2 == doctest::Approx(2.0).epsilon(1e-12));
        double s4 = singular_series(4, SingularSeriesMethod::product, 100000);
        CHECK(s4 == doctest::Approx(s2).epsilon(1e-12));
    }
}

TEST_CASE("the desk experiment at modest size") {
    SUBCASE("odd shift rejected") {
        CHECK_THROWS_AS(hl_experiment(10000, {3}), std::invalid_argument);
    }
    SUBCASE("ratios, truncation gap and its comparator") {
        auto rows = hl_experiment(100000, {2, 4, 6}, 100000);
        REQUIRE(rows.size() == 3);
        for (const HlRow& r : rows) {
            INFO("shift ", r.shift);
            CHECK(r.ratio > 0.8);
            CHECK(r.ratio < 1.2);
            double bound = 10.0 * static_cast<double>(r.shift) * std::log(100000.0) *
                           std::log(100000.0 + static_cast<double>(r.shift));
            CHECK(r.trunc_gap <= bound);
            CHECK(r.trunc_gap_ratio <= 10.0);
        }
    }
    SUBCASE("deterministic across thread counts") {
        auto one = hl_experiment(50000, {2}, 10000, 1);
        auto two = hl_experiment(50000, {2}, 10000, 2);
        CHECK(one[0].corr_lambda == two[0].corr_lambda);
        CHECK(one[0].corr_lambda_trunc == two[0].corr_lambda_trunc);
    }
}
