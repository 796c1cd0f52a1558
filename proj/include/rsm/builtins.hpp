#pragma once

#include <string>

#include "rsm/arith_fn.hpp"

namespace rsm {

// A named function together with its Eratosthenes transform, ready for the
// transform/decomposition machinery. Closed-form local Dirichlet data is
// attached wherever it exists so the exact smooth routes fire.
struct BuiltinFunction {
    std::string name;
    ArithmeticFunction F;
    ArithmeticFunction F_prime;
};

// Registry names: zero, one, identity, mobius, phi-over-n, sigma-over-n,
// lambda, lambda-truncated:<N>, exp:<q>:<j>, counterexample:<p0>.
// Throws std::invalid_argument on unknown names or malformed parameters.
BuiltinFunction make_builtin(const std::string& spec);

std::vector<std::string> builtin_names();

}  // namespace rsm
