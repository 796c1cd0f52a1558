#pragma once

#include <atomic>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

namespace rsm {

using Complex = std::complex<double>;

inline int64_t ipow(int64_t base, int exp) {
    int64_t r = 1;
    while (exp-- > 0) {
        if (base != 0 && r > INT64_MAX / std::abs(base))
            throw std::overflow_error("ipow: 64-bit overflow");
        r *= base;
    }
    return r;
}

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<__uint128_t>(a) * b % m);
}

inline uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
    if (m == 1) return 0;
    uint64_t r = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Neumaier-compensated accumulator; long correlation sums must stay well
// below the tolerances the ratio tests use.
class Kahan {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0, comp_ = 0.0;
};

class KahanComplex {
  public:
    void add(const Complex& z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    Complex value() const { return {re_.value(), im_.value()}; }

  private:
    Kahan re_, im_;
};

// Deterministic block-parallel map: work is split into fixed-size blocks,
// block results are merged in index order, so the output does not depend on
// the thread count.
template <typename Fn>
void parallel_blocks(int64_t n, int threads, int64_t block, Fn&& per_block) {
    if (n <= 0) return;
    int64_t nblocks = (n + block - 1) / block;
    if (threads <= 1 || nblocks == 1) {
        for (int64_t b = 0; b < nblocks; ++b)
            per_block(b, b * block, std::min(n, (b + 1) * block));
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int64_t> next{0};
    int nthreads = std::min<int64_t>(threads, nblocks);
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                int64_t b = next.fetch_add(1);
                if (b >= nblocks) break;
                per_block(b, b * block, std::min(n, (b + 1) * block));
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace rsm
