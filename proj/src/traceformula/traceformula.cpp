#include "eiscong/traceformula/traceformula.hpp"

#include <cmath>
#include <mutex>
#include <numeric>

#include "eiscong/error.hpp"

namespace eiscong::trace {

HurwitzTable::HurwitzTable(std::uint64_t maxn) : maxn_(maxn), twelve_h_(maxn + 1, 0) {
  if (maxn > kMaxN) throw ComputationError("Hurwitz table limit exceeded: " + std::to_string(maxn));
  twelve_h_[0] = -1;
  // Reduced forms (a, b, c): |b| <= a <= c, b >= 0 when |b| = a or a = c.
  for (std::uint64_t a = 1; 3 * a * a <= maxn; ++a) {
    const long ai = static_cast<long>(a);
    for (long b = -ai + 1; b <= ai; ++b) {
      const std::uint64_t b2 = static_cast<std::uint64_t>(b * b);
      for (std::uint64_t c = a;; ++c) {
        const std::uint64_t n = 4 * a * c - b2;
        if (n > maxn) break;
        if (b < 0 && c == a) continue;
        long w = 12;
        if (c == a && b == 0) w = 6;
        if (c == a && b == ai) w = 4;
        twelve_h_[n] += w;
      }
    }
  }
}

long HurwitzTable::twelve_h(std::uint64_t n) const {
  if (n > maxn_) throw ComputationError("Hurwitz table too small for " + std::to_string(n));
  return twelve_h_[n];
}

Rational HurwitzTable::value(std::uint64_t n) const {
  Rational r(twelve_h(n), 12);
  r.canonicalize();
  return r;
}

std::shared_ptr<const HurwitzTable> HurwitzTable::covering(std::uint64_t n) {
  static std::mutex mu;
  static std::shared_ptr<const HurwitzTable> table;
  std::lock_guard<std::mutex> lock(mu);
  if (!table || table->maxn() < n) {
    if (n > kMaxN) throw ComputationError("Hurwitz table limit exceeded: " + std::to_string(n));
    std::uint64_t size = 1024;
    while (size < n) size *= 2;
    table = std::make_shared<const HurwitzTable>(std::min(size, kMaxN));
  }
  return table;
}

Rational hurwitz(std::uint64_t n) { return HurwitzTable::covering(n)->value(n); }

namespace {

// Coefficient of x^{k-2} in 1 / (1 - t x + m x^2).
Integer gegenbauer(int k, long t, const Integer& m) {
  Integer prev = 1, cur = t;
  if (k == 2) return prev;
  for (int w = 1; w < k - 2; ++w) {
    Integer next = Integer(t) * cur - m * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::uint64_t count_roots(long t, std::uint64_t m, std::uint64_t modulus, std::uint64_t range) {
  std::uint64_t count = 0;
  const long mod = static_cast<long>(modulus);
  for (std::uint64_t x = 0; x < range; ++x) {
    const long xi = static_cast<long>(x);
    long v = ((xi * xi - t * xi) % mod + static_cast<long>(m % modulus)) % mod;
    if (v < 0) v += mod;
    if (v == 0) ++count;
  }
  return count;
}

}  // namespace

Integer trace_tm(int k, std::uint64_t N, std::uint64_t m) {
  require(k >= 4 && k % 2 == 0, "weight must be even and at least 4");
  require(m >= 1, "Hecke index must be positive");
  require(N == 1 || exact::is_prime(N), "level must be 1 or a prime");
  if (std::gcd(m, N) != 1) {
    throw PreconditionError("not implemented for m sharing factors with N");
  }
  const Integer mi(static_cast<unsigned long>(m));
  const Integer psi = N == 1 ? Integer(1) : Integer(static_cast<unsigned long>(N + 1));
  const auto table = HurwitzTable::covering(4 * m);

  // Identity term.
  Rational total = 0;
  const auto r = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(m))));
  std::uint64_t root = r;
  while (root * root > m) --root;
  while ((root + 1) * (root + 1) <= m) ++root;
  if (root * root == m) {
    total += Rational(exact::ipow(mi, static_cast<unsigned long>(k / 2 - 1)) * (k - 1) * psi, 12);
  }

  // Elliptic terms.
  Rational elliptic = 0;
  for (long t = 0; static_cast<std::uint64_t>(t * t) < 4 * m; ++t) {
    const std::uint64_t disc = 4 * m - static_cast<std::uint64_t>(t * t);
    Rational weight;
    if (N == 1) {
      weight = table->value(disc);
    } else {
      const std::uint64_t p2 = N * N;
      Rational inner = 0;
      if (disc % p2 == 0) inner = table->value(disc / p2);
      weight = (table->value(disc) - inner) * Rational(static_cast<long>(count_roots(t, m, N, N)));
      if (inner != 0) {
        weight += inner * Rational(static_cast<long>(N + 1)) * Rational(static_cast<long>(count_roots(t, m, p2, N)));
      }
    }
    Rational term = Rational(gegenbauer(k, t, mi)) * weight;
    elliptic += (t == 0) ? term : Rational(2) * term;  // t and -t contribute alike
  }
  total -= elliptic / 2;

  // Hyperbolic terms; each divisor pair counted once per cusp.
  Rational hyper = 0;
  for (auto d : exact::divisors(m)) {
    const std::uint64_t small = std::min(d, m / d);
    hyper += Rational(exact::ipow(Integer(static_cast<unsigned long>(small)), static_cast<unsigned long>(k - 1)));
  }
  const long cusps = N == 1 ? 1 : 2;
  total -= hyper * Rational(cusps) / 2;

  total.canonicalize();
  if (total.get_den() != 1) throw ComputationError("trace formula produced a non-integer: " + total.get_str());
  return total.get_num();
}

Integer trace_tm_new(int k, std::uint64_t p, std::uint64_t m) {
  require(exact::is_prime(p), "level must be prime");
  return trace_tm(k, p, m) - 2 * trace_tm(k, 1, m);
}

PolyQ poly_from_power_sums(const std::vector<Rational>& s) {
  const std::size_t d = s.size();
  std::vector<Rational> e(d + 1);
  e[0] = 1;
  for (std::size_t i = 1; i <= d; ++i) {
    Rational acc = 0;
    for (std::size_t j = 1; j <= i; ++j) {
      Rational term = e[i - j] * s[j - 1];
      acc += (j % 2 == 1) ? term : Rational(-term);
    }
    e[i] = acc / Rational(static_cast<long>(i));
  }
  std::vector<Rational> c(d + 1);
  for (std::size_t i = 0; i <= d; ++i) c[d - i] = (i % 2 == 0) ? e[i] : Rational(-e[i]);
  return PolyQ(std::move(c));
}

NewSpaceCharPoly charpoly_tq_new(int k, std::uint64_t p, std::uint64_t q) {
  require(exact::is_prime(q), "Hecke index must be prime");
  require(q != p, "Hecke prime must differ from the level");
  const Integer dim = trace_tm_new(k, p, 1);
  if (dim < 0) throw ComputationError("negative new-space dimension");
  if (dim > kMaxNewDimension) {
    throw ComputationError("new-space dimension " + dim.get_str() + " exceeds supported degree " +
                           std::to_string(kMaxNewDimension));
  }
  const auto d = static_cast<std::size_t>(dim.get_ui());
  NewSpaceCharPoly out{k, p, q, PolyQ::constant(1)};
  if (d == 0) return out;

  const Integer qk = exact::ipow(Integer(static_cast<unsigned long>(q)), static_cast<unsigned long>(k - 1));
  // traces of T_{q^j}, j = 0..d
  std::vector<Integer> tr(d + 1);
  Integer qj = 1;
  for (std::size_t j = 0; j <= d; ++j) {
    tr[j] = trace_tm_new(k, p, qj.get_ui());
    qj *= q;
  }
  // T_q^i = sum_j coef[i][j] T_{q^j}
  std::vector<std::vector<Integer>> coef(d + 1, std::vector<Integer>(d + 1, 0));
  coef[0][0] = 1;
  for (std::size_t i = 1; i <= d; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const Integer& c = coef[i - 1][j];
      if (c == 0) continue;
      // T_q T_{q^j} = T_{q^{j+1}} + q^{k-1} T_{q^{j-1}}
      coef[i][j + 1] += c;
      if (j >= 1) coef[i][j - 1] += c * qk;
    }
  }
  std::vector<Rational> sums;
  for (std::size_t i = 1; i <= d; ++i) {
    Integer s = 0;
    for (std::size_t j = 0; j <= i; ++j) s += coef[i][j] * tr[j];
    sums.emplace_back(s);
  }
  out.poly = poly_from_power_sums(sums);
  if (!out.poly.has_integer_coeffs()) throw ComputationError("characteristic polynomial is not integral");
  return out;
}

mf::EigenSystem rational_newform_system(int k, std::uint64_t p, const std::vector<std::uint64_t>& primes) {
  if (trace_tm_new(k, p, 1) != 1) throw PreconditionError("new space is not one-dimensional");
  mf::EigenSystem sys;
  sys.weight = k;
  sys.level = static_cast<int>(p);
  sys.field = nf::NumberField::rationals();
  for (auto q : primes) {
    require(exact::is_prime(q), "Hecke index must be prime");
    if (q == p) continue;
    sys.values.emplace(q, nf::NFElement::from_rational(sys.field, Rational(trace_tm_new(k, p, q))));
  }
  return sys;
}

}  // namespace eiscong::trace
