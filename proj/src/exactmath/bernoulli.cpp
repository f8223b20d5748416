#include "eiscong/exactmath/bernoulli.hpp"

#include <mutex>

#include "eiscong/error.hpp"

namespace eiscong::exact {

namespace {

std::mutex cache_mutex;
std::vector<Rational> cache{Rational(1)};

}  // namespace

Rational bernoulli(unsigned k) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  // sum_{i=0}^{n} C(n+1, i) B_i = 0 for n >= 1
  while (cache.size() <= k) {
    const unsigned long n = cache.size();
    if (n >= 3 && n % 2 == 1) {
      cache.emplace_back(0);
      continue;
    }
    Rational acc = 0;
    for (unsigned long i = 0; i < n; ++i) {
      if (cache[i] == 0) continue;
      acc += Rational(binomial(n + 1, i)) * cache[i];
    }
    Rational b = -acc / Rational(binomial(n + 1, n));
    b.canonicalize();
    cache.push_back(b);
  }
  return cache[k];
}

Rational zeta_quantity(unsigned k, const std::vector<Integer>& primes) {
  require(k >= 2 && k % 2 == 0, "weight must be even and at least 2");
  Rational q = bernoulli(k) / Rational(2 * k);
  for (auto& p : primes) {
    require(is_prime(p), "Euler factor index " + p.get_str() + " is not prime");
    q *= Rational(ipow(p, k) - 1);
  }
  q.canonicalize();
  return q;
}

}  // namespace eiscong::exact
