#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eiscong::exact {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical rational num/den (den > 0, reduced).
Rational make_rational(const Integer& num, const Integer& den);
Rational parse_rational(std::string_view text);
std::string to_string(const Integer& n);
std::string to_string(const Rational& q);

/// Strong probable-prime test (BPSW inside GMP); exact below 2^64.
bool is_prime(const Integer& n);
bool is_prime(std::uint64_t n);
Integer next_prime(const Integer& n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

/// Prime factorization of |n| (n != 0) by trial division and Brent's rho.
/// Factors are returned in increasing order.
std::vector<std::pair<Integer, int>> factor_integer(const Integer& n);

struct PartialFactorization {
  std::vector<std::pair<Integer, int>> factors;
  /// Composite part left unsplit (1 when the factorization is complete).
  Integer cofactor;
};

/// As factor_integer, but gives up on composites once the rho iteration
/// budget is spent.
PartialFactorization factor_integer_bounded(const Integer& n, std::uint64_t rho_iterations);

/// Distinct primes dividing |n|, increasing.
std::vector<Integer> prime_divisors(const Integer& n);

int valuation(const Integer& n, const Integer& ell);

/// ell-adic valuation of a nonzero rational.
int ord_at(const Rational& x, const Integer& ell);

Integer ipow(const Integer& base, unsigned long exp);
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Residue of x in Z/m (m > 0), x may be negative.
std::uint64_t mod_u64(const Integer& x, std::uint64_t m);
/// Residue of a rational whose denominator is prime to m.
std::uint64_t mod_u64(const Rational& x, std::uint64_t m);

Integer binomial(unsigned long n, unsigned long k);
std::vector<std::uint64_t> divisors(std::uint64_t n);

}  // namespace eiscong::exact
