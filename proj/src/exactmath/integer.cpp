#include "eiscong/exactmath/integer.hpp"

#include <algorithm>
#include <map>

#include "eiscong/error.hpp"

namespace eiscong::exact {

Rational make_rational(const Integer& num, const Integer& den) {
  require(den != 0, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    return make_rational(num, den);
  } catch (const std::invalid_argument&) {
    throw PreconditionError("malformed rational '" + s + "'");
  }
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for 64-bit inputs.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Integer next_prime(const Integer& n) {
  Integer r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

namespace {

// Returns 1 when the iteration budget runs out (budget == nullptr: unbounded).
Integer rho_brent(const Integer& n, unsigned long c, std::uint64_t* budget) {
  Integer y = 2, x, g = 1, q = 1, ys;
  const unsigned long m = 128;
  unsigned long r = 1;
  auto f = [&](const Integer& v) {
    Integer t = v * v + c;
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    return t;
  };
  do {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = f(y);
    unsigned long k = 0;
    do {
      ys = y;
      for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
        if (budget != nullptr) {
          if (*budget == 0) return Integer(1);
          --*budget;
        }
        y = f(y);
        Integer diff = x - y;
        q = q * abs(diff);
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
    } while (k < r && g == 1);
    r *= 2;
  } while (g == 1);
  if (g == n) {
    do {
      ys = f(ys);
      Integer diff = abs(Integer(x - ys));
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

// Unfactored composite parts go to leftover when the budget is exhausted.
void split(const Integer& n, std::map<Integer, int>& acc, std::uint64_t* budget, Integer& leftover) {
  if (n == 1) return;
  if (is_prime(n)) {
    acc[n] += 1;
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    split(r, acc, budget, leftover);
    split(r, acc, budget, leftover);
    return;
  }
  for (unsigned long c = 1;; ++c) {
    Integer d = rho_brent(n, c, budget);
    if (d != n && d != 1) {
      split(d, acc, budget, leftover);
      split(Integer(n / d), acc, budget, leftover);
      return;
    }
    if (budget != nullptr && *budget == 0) {
      leftover *= n;
      return;
    }
  }
}

}  // namespace

namespace {

PartialFactorization factor_with_budget(const Integer& n, std::uint64_t* budget) {
  require(n != 0, "cannot factor zero");
  Integer m = abs(n);
  std::map<Integer, int> acc;
  for (unsigned long p = 2; p < 10000 && m > 1; p += (p == 2 ? 1 : 2)) {
    if (p * p > m) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      acc[Integer(p)] += 1;
      m /= p;
    }
  }
  PartialFactorization out;
  out.cofactor = 1;
  split(m, acc, budget, out.cofactor);
  out.factors.assign(acc.begin(), acc.end());
  return out;
}

}  // namespace

std::vector<std::pair<Integer, int>> factor_integer(const Integer& n) {
  return factor_with_budget(n, nullptr).factors;
}

PartialFactorization factor_integer_bounded(const Integer& n, std::uint64_t rho_iterations) {
  return factor_with_budget(n, &rho_iterations);
}

std::vector<Integer> prime_divisors(const Integer& n) {
  std::vector<Integer> out;
  for (auto& [p, e] : factor_integer(n)) out.push_back(p);
  return out;
}

int valuation(const Integer& n, const Integer& ell) {
  require(n != 0, "valuation of zero");
  require(ell >= 2, "valuation base must be at least 2");
  Integer m = n;
  int v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), ell.get_mpz_t())) {
    m /= ell;
    ++v;
  }
  return v;
}

int ord_at(const Rational& x, const Integer& ell) {
  require(x != 0, "valuation of zero");
  return valuation(x.get_num(), ell) - valuation(x.get_den(), ell);
}

Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t mod_u64(const Integer& x, std::uint64_t m) {
  return mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(m));
}

std::uint64_t mod_u64(const Rational& x, std::uint64_t m) {
  std::uint64_t den = mod_u64(x.get_den(), m);
  Integer inv;
  Integer dm(static_cast<unsigned long>(den)), mm(static_cast<unsigned long>(m));
  if (den == 0 || mpz_invert(inv.get_mpz_t(), dm.get_mpz_t(), mm.get_mpz_t()) == 0) {
    throw PreconditionError("denominator not invertible modulo " + std::to_string(m));
  }
  return mulmod(mod_u64(x.get_num(), m), mod_u64(inv, m), m);
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace eiscong::exact
