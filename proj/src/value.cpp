#include "rsm/value.hpp"

#include <cstdio>

namespace rsm {

static std::string double_repr(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string Value::str() const {
    if (is_exact()) return rat().get_str();
    if (is_real()) return double_repr(std::get<double>(v_));
    const Complex& z = std::get<Complex>(v_);
    std::string s = double_repr(z.real());
    s += (z.imag() < 0 ? "-" : "+");
    s += double_repr(std::abs(z.imag()));
    s += "i";
    return s;
}

}  // namespace rsm
