#pragma once

#include "hyperdist/rational.hpp"

namespace hyperdist {

// Exact Bernoulli numbers, B(1) = -1/2 convention. Thread-safe global cache.
const Rational& bernoulli(unsigned n);

// zeta at nonpositive integers: zeta(0) = -1/2, zeta(-m) = -B(m+1)/(m+1)
Rational zeta_nonpositive_int(unsigned m);

} // namespace hyperdist
