#include "rsm/arith_fn.hpp"

#include <stdexcept>

#include "rsm/factored.hpp"

namespace rsm {

ArithmeticFunction ArithmeticFunction::from_rule(std::string name,
                                                 std::function<Value(int64_t)> rule) {
    ArithmeticFunction f;
    f.impl_ = std::make_shared<Impl>();
    f.impl_->name = std::move(name);
    f.impl_->rule = std::move(rule);
    return f;
}

ArithmeticFunction ArithmeticFunction::from_table(std::string name, std::vector<Value> values) {
    ArithmeticFunction f;
    f.impl_ = std::make_shared<Impl>();
    f.impl_->name = std::move(name);
    f.impl_->table = std::move(values);
    return f;
}

ArithmeticFunction ArithmeticFunction::from_finite_support(std::string name,
                                                           std::vector<Value> values) {
    auto table = std::make_shared<std::vector<Value>>(std::move(values));
    int64_t bound = static_cast<int64_t>(table->size());
    auto f = from_rule(std::move(name), [table, bound](int64_t n) {
        return n <= bound ? (*table)[n - 1] : Value(0);
    });
    f.impl_->finite_support = bound;
    return f;
}

Value ArithmeticFunction::operator()(int64_t n) const {
    if (!impl_) throw std::logic_error("ArithmeticFunction: empty");
    if (n < 1) throw std::invalid_argument(impl_->name + ": argument must be >= 1");
    if (!impl_->rule) {
        if (n > static_cast<int64_t>(impl_->table.size()))
            throw std::out_of_range(impl_->name + ": n beyond tabulated bound");
        return impl_->table[n - 1];
    }
    if (impl_->memo) {
        std::lock_guard<std::mutex> lock(impl_->memo_mutex);
        auto it = impl_->memo_map.find(n);
        if (it != impl_->memo_map.end()) return it->second;
        Value v = impl_->rule(n);
        impl_->memo_map.emplace(n, v);
        return v;
    }
    return impl_->rule(n);
}

ArithmeticFunction& ArithmeticFunction::mark_multiplicative(bool v) {
    impl_->multiplicative = v;
    return *this;
}
ArithmeticFunction& ArithmeticFunction::mark_complex_valued(bool v) {
    impl_->complex_valued = v;
    return *this;
}
ArithmeticFunction& ArithmeticFunction::mark_squarefree_supported(bool v) {
    impl_->squarefree_supported = v;
    return *this;
}
ArithmeticFunction& ArithmeticFunction::with_local(DirichletLocal local) {
    impl_->local = std::move(local);
    return *this;
}
ArithmeticFunction& ArithmeticFunction::enable_memo() {
    impl_->memo = true;
    return *this;
}

ArithmeticFunction eratosthenes_transform(const ArithmeticFunction& F, int64_t X) {
    if (X < 1) throw std::invalid_argument("eratosthenes_transform: X must be >= 1");
    auto sieve = default_sieve();
    if (X > sieve->bound) sieve = SieveTables::cached(X);
    std::vector<Value> out(static_cast<size_t>(X), Value(0));
    for (int64_t a = 1; a <= X; ++a) {
        Value fa = F(a);
        if (fa.is_zero()) continue;
        for (int64_t d = a; d <= X; d += a) {
            int8_t mu = sieve->mu[d / a];
            if (mu == 1)
                out[d - 1] += fa;
            else if (mu == -1)
                out[d - 1] -= fa;
        }
    }
    auto fp = ArithmeticFunction::from_table(F.name() + "'", std::move(out));
    if (F.complex_valued()) fp.mark_complex_valued();
    return fp;
}

ArithmeticFunction divisor_sum(const ArithmeticFunction& Fp, int64_t X) {
    if (X < 1) throw std::invalid_argument("divisor_sum: X must be >= 1");
    std::vector<Value> out(static_cast<size_t>(X), Value(0));
    for (int64_t d = 1; d <= X; ++d) {
        Value fd = Fp(d);
        if (fd.is_zero()) continue;
        for (int64_t n = d; n <= X; n += d) out[n - 1] += fd;
    }
    auto f = ArithmeticFunction::from_table("sum_div(" + Fp.name() + ")", std::move(out));
    if (Fp.complex_valued()) f.mark_complex_valued();
    return f;
}

}  // namespace rsm
