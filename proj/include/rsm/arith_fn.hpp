#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rsm/value.hpp"

namespace rsm {

// Exact local Dirichlet data of a multiplicative function f:
//   at(p, K)  = f(p^K)
//   tail(p, m) = sum_{K >= m} f(p^K) / p^K, in closed form.
// This is what turns infinite smooth sums into exact rationals.
struct DirichletLocal {
    std::function<Value(int64_t p, int K)> at;
    std::function<Rational(int64_t p, int m)> tail;
};

// An evaluator n -> Value, rule- or table-backed. Deterministic: the same n
// always yields the same value. Copies share state.
class ArithmeticFunction {
  public:
    ArithmeticFunction() = default;

    static ArithmeticFunction from_rule(std::string name, std::function<Value(int64_t)> rule);
    // values[i] is f(i + 1); evaluation beyond the table throws.
    static ArithmeticFunction from_table(std::string name, std::vector<Value> values);
    // values[i] is f(i + 1) and f vanishes beyond the table.
    static ArithmeticFunction from_finite_support(std::string name, std::vector<Value> values);

    Value operator()(int64_t n) const;

    const std::string& name() const { return impl_->name; }
    bool table_backed() const { return impl_->rule == nullptr; }
    int64_t table_bound() const { return static_cast<int64_t>(impl_->table.size()); }

    bool multiplicative() const { return impl_->multiplicative; }
    bool complex_valued() const { return impl_->complex_valued; }
    bool squarefree_supported() const { return impl_->squarefree_supported; }
    std::optional<int64_t> finite_support_bound() const { return impl_->finite_support; }
    const std::optional<DirichletLocal>& local() const { return impl_->local; }

    ArithmeticFunction& mark_multiplicative(bool v = true);
    ArithmeticFunction& mark_complex_valued(bool v = true);
    ArithmeticFunction& mark_squarefree_supported(bool v = true);
    ArithmeticFunction& with_local(DirichletLocal local);
    ArithmeticFunction& enable_memo();

    explicit operator bool() const { return impl_ != nullptr; }

  private:
    struct Impl {
        std::string name;
        std::function<Value(int64_t)> rule;
        std::vector<Value> table;
        bool multiplicative = false;
        bool complex_valued = false;
        bool squarefree_supported = false;
        std::optional<int64_t> finite_support;
        std::optional<DirichletLocal> local;
        bool memo = false;
        mutable std::mutex memo_mutex;
        mutable std::unordered_map<int64_t, Value> memo_map;
    };
    std::shared_ptr<Impl> impl_;
};

// F'(d) = sum_{a | d} F(a) mu(d/a), tabulated on [1..X]. Exact inputs stay
// exact. Round-trips with divisor_sum.
ArithmeticFunction eratosthenes_transform(const ArithmeticFunction& F, int64_t X);

// F(n) = sum_{d | n} Fp(d), tabulated on [1..X].
ArithmeticFunction divisor_sum(const ArithmeticFunction& Fp, int64_t X);

}  // namespace rsm
