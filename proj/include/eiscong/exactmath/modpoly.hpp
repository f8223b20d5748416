#pragma once

// Dense univariate polynomial algorithms over a field given by a policy
// object. Coefficients are stored lowest degree first with no trailing
// zeros; the zero polynomial is the empty vector.
//
// A field policy F provides:
//   using Elem;
//   Elem zero() const; Elem one() const;
//   Elem add(Elem, Elem) const; Elem sub(Elem, Elem) const; Elem neg(Elem) const;
//   Elem mul(Elem, Elem) const; Elem inv(Elem) const;
//   bool is_zero(const Elem&) const; bool eq(const Elem&, const Elem&) const;
// Prime-field policies (used for factoring) additionally provide
//   Integer characteristic() const; Elem random(std::mt19937_64&) const;

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "eiscong/error.hpp"
#include "eiscong/exactmath/integer.hpp"

namespace eiscong::exact {

/// Z/p for a prime p < 2^63.
struct SmallPrimeField {
  using Elem = std::uint64_t;
  std::uint64_t p = 2;

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p; }
  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p ? s - p : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + (p - b); }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem mul(Elem a, Elem b) const { return mulmod(a, b, p); }
  Elem inv(Elem a) const {
    if (a == 0) throw ComputationError("division by zero in Z/" + std::to_string(p));
    return powmod(a, p - 2, p);
  }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
  Integer characteristic() const { return Integer(static_cast<unsigned long>(p)); }
  Elem random(std::mt19937_64& rng) const { return rng() % p; }
};

/// Z/p for an arbitrary-size prime p.
struct BigPrimeField {
  using Elem = Integer;
  Integer p;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem reduce(Elem a) const {
    mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return a;
  }
  Elem add(const Elem& a, const Elem& b) const {
    Elem s = a + b;
    if (s >= p) s -= p;
    return s;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem s = a - b;
    if (s < 0) s += p;
    return s;
  }
  Elem neg(const Elem& a) const { return a == 0 ? Elem(0) : Elem(p - a); }
  Elem mul(const Elem& a, const Elem& b) const { return reduce(a * b); }
  Elem inv(const Elem& a) const {
    Elem r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0) {
      throw ComputationError("division by zero modulo a large prime");
    }
    return r;
  }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  Integer characteristic() const { return p; }
  Elem random(std::mt19937_64& rng) const {
    // Concatenate 64-bit draws until the value exceeds p, then reduce.
    Elem r = 0;
    const auto bits = mpz_sizeinbase(p.get_mpz_t(), 2) + 64;
    for (std::size_t got = 0; got < bits; got += 64) {
      r <<= 64;
      r += Elem(static_cast<unsigned long>(rng()));
    }
    return reduce(r);
  }
};

namespace modpoly {

template <class F>
using Poly = std::vector<typename F::Elem>;

template <class F>
void trim(const F& fd, Poly<F>& a) {
  while (!a.empty() && fd.is_zero(a.back())) a.pop_back();
}

template <class F>
long degree(const Poly<F>& a) {
  return static_cast<long>(a.size()) - 1;
}

template <class F>
bool equal(const F& fd, const Poly<F>& a, const Poly<F>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!fd.eq(a[i], b[i])) return false;
  }
  return true;
}

template <class F>
Poly<F> constant(const F& fd, typename F::Elem c) {
  Poly<F> r{c};
  trim(fd, r);
  return r;
}

template <class F>
Poly<F> monomial_x(const F& fd) {
  return Poly<F>{fd.zero(), fd.one()};
}

template <class F>
Poly<F> add(const F& fd, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r(std::max(a.size(), b.size()), fd.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = fd.add(r[i], b[i]);
  trim(fd, r);
  return r;
}

template <class F>
Poly<F> sub(const F& fd, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r(std::max(a.size(), b.size()), fd.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = fd.sub(r[i], b[i]);
  trim(fd, r);
  return r;
}

template <class F>
Poly<F> scale(const F& fd, const Poly<F>& a, const typename F::Elem& c) {
  Poly<F> r(a.size(), fd.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = fd.mul(a[i], c);
  trim(fd, r);
  return r;
}

template <class F>
Poly<F> mul(const F& fd, const Poly<F>& a, const Poly<F>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<F> r(a.size() + b.size() - 1, fd.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (fd.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = fd.add(r[i + j], fd.mul(a[i], b[j]));
  }
  trim(fd, r);
  return r;
}

template <class F>
std::pair<Poly<F>, Poly<F>> divrem(const F& fd, const Poly<F>& a, const Poly<F>& b) {
  if (b.empty()) throw ComputationError("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  Poly<F> r = a;
  Poly<F> q(a.size() - b.size() + 1, fd.zero());
  const auto lead_inv = fd.inv(b.back());
  for (long i = static_cast<long>(a.size() - b.size()); i >= 0; --i) {
    const auto c = fd.mul(r[i + b.size() - 1], lead_inv);
    q[i] = c;
    if (fd.is_zero(c)) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = fd.sub(r[i + j], fd.mul(c, b[j]));
  }
  trim(fd, q);
  trim(fd, r);
  return {q, r};
}

template <class F>
Poly<F> rem(const F& fd, const Poly<F>& a, const Poly<F>& b) {
  return divrem(fd, a, b).second;
}

template <class F>
Poly<F> monic(const F& fd, const Poly<F>& a) {
  if (a.empty()) return a;
  return scale(fd, a, fd.inv(a.back()));
}

template <class F>
Poly<F> gcd(const F& fd, Poly<F> a, Poly<F> b) {
  while (!b.empty()) {
    auto r = rem(fd, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(fd, a);
}

/// Returns (g, s) with g = gcd(a, m) monic and s*a = g mod m.
template <class F>
std::pair<Poly<F>, Poly<F>> gcd_cofactor(const F& fd, const Poly<F>& a, const Poly<F>& m) {
  Poly<F> r0 = m, r1 = a, s0, s1 = constant(fd, fd.one());
  while (!r1.empty()) {
    auto [q, r] = divrem(fd, r0, r1);
    auto s = sub(fd, s0, mul(fd, q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.empty()) return {r0, s0};
  const auto c = fd.inv(r0.back());
  return {scale(fd, r0, c), scale(fd, s0, c)};
}

template <class F>
Poly<F> derivative(const F& fd, const Poly<F>& a) {
  if (a.size() <= 1) return {};
  Poly<F> r(a.size() - 1, fd.zero());
  for (std::size_t i = 1; i < a.size(); ++i) {
    // i * a[i] via repeated addition would be slow for large i; use the
    // field's integer embedding through one().
    typename F::Elem c = fd.zero();
    typename F::Elem step = a[i];
    std::size_t n = i;
    while (n > 0) {
      if (n & 1) c = fd.add(c, step);
      step = fd.add(step, step);
      n >>= 1;
    }
    r[i - 1] = c;
  }
  trim(fd, r);
  return r;
}

template <class F>
typename F::Elem eval(const F& fd, const Poly<F>& a, const typename F::Elem& x) {
  typename F::Elem acc = fd.zero();
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = fd.add(fd.mul(acc, x), *it);
  return acc;
}

template <class F>
Poly<F> mulmod_poly(const F& fd, const Poly<F>& a, const Poly<F>& b, const Poly<F>& m) {
  return rem(fd, mul(fd, a, b), m);
}

/// base^exp mod m.
template <class F>
Poly<F> powmod(const F& fd, const Poly<F>& base, const Integer& exp, const Poly<F>& m) {
  Poly<F> result = rem(fd, constant(fd, fd.one()), m);
  Poly<F> b = rem(fd, base, m);
  const auto bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
  if (exp == 0) return result;
  for (long i = static_cast<long>(bits) - 1; i >= 0; --i) {
    result = mulmod_poly(fd, result, result, m);
    if (mpz_tstbit(exp.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      result = mulmod_poly(fd, result, b, m);
    }
  }
  return result;
}

/// Squarefree decomposition over a prime field: monic f = prod g_i^{m_i}.
template <class F>
std::vector<std::pair<Poly<F>, int>> squarefree(const F& fd, const Poly<F>& f_in) {
  std::vector<std::pair<Poly<F>, int>> out;
  Poly<F> f = monic(fd, f_in);
  if (degree<F>(f) <= 0) return out;
  const Integer pchar = fd.characteristic();
  auto df = derivative(fd, f);
  Poly<F> c = gcd(fd, f, df);
  Poly<F> w = divrem(fd, f, c).first;
  int i = 1;
  while (degree<F>(w) > 0) {
    Poly<F> y = gcd(fd, w, c);
    Poly<F> fac = divrem(fd, w, y).first;
    if (degree<F>(fac) > 0) out.emplace_back(monic(fd, fac), i);
    w = y;
    c = divrem(fd, c, y).first;
    ++i;
  }
  if (degree<F>(c) > 0) {
    // c is a polynomial in x^p; take the p-th root (coefficientwise identity
    // on a prime field).
    const unsigned long p = pchar.get_ui();
    Poly<F> root;
    for (std::size_t k = 0; k * p < c.size(); ++k) root.push_back(c[k * p]);
    trim(fd, root);
    for (auto& [g, m] : squarefree(fd, root)) out.emplace_back(g, m * static_cast<int>(p));
  }
  return out;
}

/// Distinct-degree factorization of a monic squarefree polynomial.
template <class F>
std::vector<std::pair<Poly<F>, int>> distinct_degree(const F& fd, Poly<F> f) {
  std::vector<std::pair<Poly<F>, int>> out;
  const Integer pchar = fd.characteristic();
  const Poly<F> x = monomial_x(fd);
  Poly<F> h = rem(fd, x, f);
  for (int d = 1; 2 * d <= degree<F>(f); ++d) {
    h = powmod(fd, h, pchar, f);
    Poly<F> g = gcd(fd, sub(fd, h, x), f);
    if (degree<F>(g) > 0) {
      out.emplace_back(g, d);
      f = divrem(fd, f, g).first;
      h = rem(fd, h, f);
    }
  }
  if (degree<F>(f) > 0) out.emplace_back(monic(fd, f), static_cast<int>(degree<F>(f)));
  return out;
}

/// Equal-degree splitting (Cantor-Zassenhaus) of a monic squarefree f
/// whose irreducible factors all have degree d.
template <class F>
void equal_degree(const F& fd, const Poly<F>& f, int d, std::mt19937_64& rng,
                  std::vector<Poly<F>>& out) {
  const long n = degree<F>(f);
  if (n == d) {
    out.push_back(monic(fd, f));
    return;
  }
  const Integer pchar = fd.characteristic();
  const bool even = (pchar == 2);
  Integer exp = 0;
  if (!even) exp = (ipow(pchar, static_cast<unsigned long>(d)) - 1) / 2;
  for (;;) {
    Poly<F> a(static_cast<std::size_t>(n), fd.zero());
    for (auto& c : a) c = fd.random(rng);
    trim(fd, a);
    if (degree<F>(a) <= 0) continue;
    Poly<F> b;
    if (even) {
      // Trace map a + a^2 + ... + a^(2^(d-1)).
      Poly<F> t = a, acc = a;
      for (int i = 1; i < d; ++i) {
        t = mulmod_poly(fd, t, t, f);
        acc = add(fd, acc, t);
      }
      b = acc;
    } else {
      b = sub(fd, powmod(fd, a, exp, f), constant(fd, fd.one()));
    }
    Poly<F> g = gcd(fd, b, f);
    if (degree<F>(g) > 0 && degree<F>(g) < n) {
      equal_degree(fd, g, d, rng, out);
      equal_degree(fd, divrem(fd, f, g).first, d, rng, out);
      return;
    }
  }
}

/// Full factorization of a nonzero polynomial into monic irreducibles with
/// multiplicities. The leading coefficient is not part of the output.
template <class F>
std::vector<std::pair<Poly<F>, int>> factor(const F& fd, const Poly<F>& f) {
  std::vector<std::pair<Poly<F>, int>> out;
  std::mt19937_64 rng(0x5eed5eedULL);
  for (auto& [sqf, mult] : squarefree(fd, f)) {
    for (auto& [block, d] : distinct_degree(fd, sqf)) {
      std::vector<Poly<F>> pieces;
      equal_degree(fd, block, d, rng, pieces);
      for (auto& piece : pieces) out.emplace_back(piece, mult);
    }
  }
  return out;
}

/// Rabin's irreducibility test over a prime field.
template <class F>
bool is_irreducible(const F& fd, const Poly<F>& f_in) {
  const long n = degree<F>(f_in);
  if (n <= 0) return false;
  if (n == 1) return true;
  Poly<F> f = monic(fd, f_in);
  const Integer pchar = fd.characteristic();
  const Poly<F> x = monomial_x(fd);
  // x^(p^n) == x mod f
  Poly<F> h = rem(fd, x, f);
  std::vector<Poly<F>> powers{h};
  for (long i = 1; i <= n; ++i) {
    h = powmod(fd, h, pchar, f);
    powers.push_back(h);
  }
  if (!equal(fd, powers[static_cast<std::size_t>(n)], rem(fd, x, f))) return false;
  for (auto& [q, e] : factor_integer(Integer(n))) {
    const long m = n / static_cast<long>(q.get_si());
    Poly<F> g = gcd(fd, sub(fd, powers[static_cast<std::size_t>(m)], x), f);
    if (degree<F>(g) > 0) return false;
  }
  return true;
}

}  // namespace modpoly
}  // namespace eiscong::exact
