#include "rsm/ramanujan.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "rsm/util.hpp"

namespace rsm {

namespace {

int64_t csum_gcd(int64_t q, int64_t a) {
    // gcd(q, 0) = q covers the c_q(0) = phi(q) convention.
    return std::gcd(q, a < 0 ? -a : a);
}

}  // namespace

int64_t ramanujan_sum_kluyver(int64_t q, int64_t a) {
    if (q < 1) throw std::invalid_argument("ramanujan_sum: q must be >= 1");
    int64_t g = csum_gcd(q, a);
    int64_t sum = 0;
    for (int64_t d : divisors(factor(g))) sum += d * mobius(q / d);
    return sum;
}

int64_t ramanujan_sum_hoelder(int64_t q, int64_t a) {
    if (q < 1) throw std::invalid_argument("ramanujan_sum: q must be >= 1");
    int64_t g = csum_gcd(q, a);
    int64_t m = q / g;
    int64_t mu_m = mobius(m);
    if (mu_m == 0) return 0;
    return mu_m * (totient(q) / totient(m));
}

int64_t ramanujan_sum(int64_t q, int64_t a) { return ramanujan_sum_kluyver(q, a); }

int64_t prime_power_csum(int64_t p, int k, int v) {
    if (k == 0) return 1;
    if (k <= v) return ipow(p, k - 1) * (p - 1);
    if (k == v + 1) return -ipow(p, k - 1);
    return 0;
}

CsumFixedModulus::CsumFixedModulus(int64_t q) : q_(q) {
    if (q < 1) throw std::invalid_argument("CsumFixedModulus: q must be >= 1");
    divs_ = divisors(factor(q));
    vals_.reserve(divs_.size());
    for (int64_t g : divs_) {
        int64_t m = q / g;
        int64_t mu_m = mobius(m);
        vals_.push_back(mu_m == 0 ? 0 : mu_m * (totient(q) / totient(m)));
    }
}

int64_t CsumFixedModulus::operator()(int64_t a) const {
    int64_t g = csum_gcd(q_, a);
    auto it = std::lower_bound(divs_.begin(), divs_.end(), g);
    return vals_[static_cast<size_t>(it - divs_.begin())];
}

int64_t divisor_csum_identity(int64_t n, int64_t a) {
    if (n < 1) throw std::invalid_argument("divisor_csum_identity: n must be >= 1");
    int64_t sum = 0;
    for (int64_t q : divisors(factor(n))) sum += ramanujan_sum_kluyver(q, a);
    int64_t expected = (a % n == 0) ? n : 0;
    if (sum != expected)
        throw std::logic_error("divisor identity failed at n=" + std::to_string(n) +
                               ", a=" + std::to_string(a));
    return sum;
}

int64_t smooth_divisor_csum(int64_t d, int64_t a, int64_t P) {
    if (d < 1 || a < 1) throw std::invalid_argument("smooth_divisor_csum: d, a must be >= 1");
    int64_t dP = smooth_part(d, P);
    int64_t closed = (a % dP == 0) ? dP : 0;
    int64_t direct = 0;
    for (int64_t q : divisors(factor(dP))) direct += ramanujan_sum_kluyver(q, a);
    if (direct != closed)
        throw std::logic_error("smooth divisor sum mismatch at d=" + std::to_string(d));
    return closed;
}

int64_t abs_smooth_csum(int64_t a, int64_t P) {
    if (a < 1) throw std::invalid_argument("abs_smooth_csum: a must be >= 1");
    if (!is_prime(P)) throw std::invalid_argument("abs_smooth_csum: P must be prime");
    FactoredInteger fa = factor(a);
    int64_t product = 1;
    int64_t pi_P = 0;
    for (int64_t p : primes_up_to(P)) {
        ++pi_P;
        int64_t f = 2 * ipow(p, fa.valuation(p));
        if (product > INT64_MAX / f) throw std::overflow_error("abs_smooth_csum overflow");
        product *= f;
    }
    // The bound 2^pi(P) * a is attained exactly when every prime <= P divides a.
    if (pi_P < 63 && product > (int64_t(1) << pi_P) * a)
        throw std::logic_error("abs_smooth_csum exceeded its bound");
    return product;
}

std::vector<int64_t> rvl_support(int64_t a, int64_t P, size_t max_count) {
    if (a < 1) throw std::invalid_argument("rvl_support: a must be >= 1");
    if (!is_prime(P)) throw std::invalid_argument("rvl_support: P must be prime");
    FactoredInteger fa = factor(a);
    FactoredInteger support;
    size_t count = 1;
    int64_t product = 1;
    for (int64_t p : primes_up_to(P)) {
        int e = fa.valuation(p) + 1;
        int64_t pe = ipow(p, e);
        if (product > INT64_MAX / pe)
            throw std::overflow_error("rvl_support: support exceeds 64 bits");
        product *= pe;
        support.factors.emplace_back(p, e);
        count *= static_cast<size_t>(e) + 1;
        if (count > max_count)
            throw std::overflow_error("rvl_support: support too large to enumerate");
    }
    return divisors(support);
}

}  // namespace rsm
