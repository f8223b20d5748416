#pragma once

#include <vector>

#include "eiscong/exactmath/integer.hpp"

namespace eiscong::exact {

/// B_k with B_1 = -1/2. Values are memoized process-wide (thread-safe).
Rational bernoulli(unsigned k);

/// B_k / (2k) * prod_{p in primes} (p^k - 1), the rational whose numerator
/// carries the zeta-value congruence primes. Requires k >= 2 even.
Rational zeta_quantity(unsigned k, const std::vector<Integer>& primes);

}  // namespace eiscong::exact
