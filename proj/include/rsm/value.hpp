#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>
#include <variant>

#include "rsm/util.hpp"

namespace rsm {

using Rational = mpq_class;

// Numeric tower for every computed quantity. Exact rationals wherever the
// identities are exact; doubles once logs, exps or genuine limits enter;
// complex once characters or imaginary exponentials enter. Arithmetic
// between two exact values stays exact, mixing demotes.
class Value {
  public:
    Value() : v_(Rational(0)) {}
    Value(int n) : v_(Rational(n)) {}
    Value(int64_t n) : v_(Rational(static_cast<long>(n))) {}
    Value(const Rational& r) : v_(r) { std::get<Rational>(v_).canonicalize(); }
    Value(double x) : v_(x) {}
    Value(const Complex& z) : v_(z) {}

    static Value exact(int64_t num, int64_t den) {
        Rational r(static_cast<long>(num), static_cast<long>(den));
        r.canonicalize();
        return Value(r);
    }

    bool is_exact() const { return std::holds_alternative<Rational>(v_); }
    bool is_real() const { return std::holds_alternative<double>(v_); }
    bool is_complex() const { return std::holds_alternative<Complex>(v_); }

    const Rational& rat() const {
        if (!is_exact()) throw std::logic_error("Value: not an exact rational");
        return std::get<Rational>(v_);
    }

    // Exact and real values convert freely; complex only when the imaginary
    // part is an artifact of representation (exactly zero).
    double to_double() const {
        if (is_exact()) return std::get<Rational>(v_).get_d();
        if (is_real()) return std::get<double>(v_);
        const Complex& z = std::get<Complex>(v_);
        if (z.imag() != 0.0)
            throw std::logic_error("Value: complex value has no double view");
        return z.real();
    }

    Complex to_complex() const {
        if (is_complex()) return std::get<Complex>(v_);
        if (is_real()) return {std::get<double>(v_), 0.0};
        return {std::get<Rational>(v_).get_d(), 0.0};
    }

    double abs() const {
        if (is_exact()) return std::abs(std::get<Rational>(v_).get_d());
        if (is_real()) return std::abs(std::get<double>(v_));
        return std::abs(std::get<Complex>(v_));
    }

    bool is_zero() const {
        if (is_exact()) return std::get<Rational>(v_) == 0;
        if (is_real()) return std::get<double>(v_) == 0.0;
        return std::get<Complex>(v_) == Complex(0.0, 0.0);
    }

    friend Value operator+(const Value& a, const Value& b) { return apply(a, b, Add{}); }
    friend Value operator-(const Value& a, const Value& b) { return apply(a, b, Sub{}); }
    friend Value operator*(const Value& a, const Value& b) { return apply(a, b, Mul{}); }
    friend Value operator/(const Value& a, const Value& b) { return apply(a, b, Div{}); }
    Value operator-() const { return Value(0) - *this; }
    Value& operator+=(const Value& o) { return *this = *this + o; }
    Value& operator-=(const Value& o) { return *this = *this - o; }
    Value& operator*=(const Value& o) { return *this = *this * o; }
    Value& operator/=(const Value& o) { return *this = *this / o; }

    // Exact equality for exact operands, bitwise otherwise.
    friend bool operator==(const Value& a, const Value& b) {
        if (a.is_exact() && b.is_exact()) return a.rat() == b.rat();
        return a.to_complex() == b.to_complex();
    }
    friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

    std::string str() const;

  private:
    struct Add {
        template <class T> T operator()(const T& x, const T& y) const { return x + y; }
    };
    struct Sub {
        template <class T> T operator()(const T& x, const T& y) const { return x - y; }
    };
    struct Mul {
        template <class T> T operator()(const T& x, const T& y) const { return x * y; }
    };
    struct Div {
        template <class T> T operator()(const T& x, const T& y) const {
            if constexpr (std::is_same_v<T, Rational>) {
                if (y == 0) throw std::domain_error("Value: division by exact zero");
            }
            return x / y;
        }
    };

    template <class Op>
    static Value apply(const Value& a, const Value& b, Op op) {
        if (a.is_exact() && b.is_exact()) {
            Rational r = op(a.rat(), b.rat());
            r.canonicalize();
            return Value(r);
        }
        if (a.is_complex() || b.is_complex()) return Value(op(a.to_complex(), b.to_complex()));
        return Value(op(a.to_double_lossy(), b.to_double_lossy()));
    }

    double to_double_lossy() const {
        if (is_exact()) return std::get<Rational>(v_).get_d();
        return std::get<double>(v_);
    }

    std::variant<Rational, double, Complex> v_;
};

inline Value abs_value(const Value& v) {
    if (v.is_exact()) return Value(Rational(::abs(v.rat())));
    return Value(v.abs());
}

}  // namespace rsm
