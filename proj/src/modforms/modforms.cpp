#include "eiscong/modforms/modforms.hpp"

#include <algorithm>
#include <numeric>

#include "eiscong/error.hpp"
#include "eiscong/exactmath/bernoulli.hpp"
#include "eiscong/exactmath/factor.hpp"

namespace eiscong::mf {

namespace {

using IntSeries = std::vector<Integer>;

IntSeries mul_trunc(const IntSeries& a, const IntSeries& b, std::size_t prec) {
  IntSeries r(prec, 0);
  for (std::size_t i = 0; i < std::min(prec, a.size()); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < prec && j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

IntSeries pow_trunc(IntSeries base, unsigned e, std::size_t prec) {
  IntSeries result(prec, 0);
  result[0] = 1;
  while (e > 0) {
    if (e & 1) result = mul_trunc(result, base, prec);
    e >>= 1;
    if (e > 0) base = mul_trunc(base, base, prec);
  }
  return result;
}

// prod (1 - q^n) by Euler's pentagonal number theorem.
IntSeries euler_product(std::size_t prec) {
  IntSeries r(prec, 0);
  r[0] = 1;
  for (std::size_t m = 1; m * (3 * m - 1) / 2 < prec; ++m) {
    const int sign = (m % 2 == 0) ? 1 : -1;
    r[m * (3 * m - 1) / 2] += sign;
    if (m * (3 * m + 1) / 2 < prec) r[m * (3 * m + 1) / 2] += sign;
  }
  return r;
}

IntSeries delta_int(std::size_t prec) {
  IntSeries r(prec, 0);
  if (prec < 2) return r;
  IntSeries e24 = pow_trunc(euler_product(prec), 24, prec - 1);
  for (std::size_t n = 1; n < prec; ++n) r[n] = e24[n - 1];
  return r;
}

IntSeries sigma_series(int k, std::size_t prec) {
  // E_4, E_6 have integer coefficients; callers scale otherwise.
  IntSeries r(prec, 0);
  for (std::size_t d = 1; d < prec; ++d) {
    Integer dk = exact::ipow(Integer(static_cast<unsigned long>(d)), static_cast<unsigned long>(k - 1));
    for (std::size_t n = d; n < prec; n += d) r[n] += dk;
  }
  return r;
}

IntSeries eisenstein_int(int k, long scale, std::size_t prec) {
  IntSeries r = sigma_series(k, prec);
  for (auto& c : r) c *= scale;
  r[0] = 1;
  return r;
}

QExpansion from_int(const IntSeries& s, int weight) {
  QExpansion q;
  q.weight = weight;
  q.coeffs.assign(s.begin(), s.end());
  return q;
}

std::vector<IntSeries> miller_int(int k, std::size_t prec) {
  const int d = cusp_dimension(k);
  std::vector<IntSeries> g;
  if (d == 0) return g;
  const IntSeries D = delta_int(prec);
  const IntSeries E4 = eisenstein_int(4, 240, prec);
  const IntSeries E6 = eisenstein_int(6, -504, prec);
  IntSeries dpow(prec, 0);
  dpow[0] = 1;
  for (int i = 1; i <= d; ++i) {
    dpow = mul_trunc(dpow, D, prec);
    const int rest = k - 12 * i;
    const int b = (rest % 4 == 0) ? 0 : 1;
    const int a = (rest - 6 * b) / 4;
    IntSeries gi = dpow;
    if (b) gi = mul_trunc(gi, E6, prec);
    gi = mul_trunc(gi, pow_trunc(E4, static_cast<unsigned>(a), prec), prec);
    g.push_back(std::move(gi));
  }
  // Clear coefficients j = i+1..d of g_i using the later forms.
  for (int i = d - 1; i >= 1; --i) {
    auto& gi = g[static_cast<std::size_t>(i - 1)];
    for (int j = i + 1; j <= d; ++j) {
      const Integer c = gi[static_cast<std::size_t>(j)];
      if (c == 0) continue;
      const auto& gj = g[static_cast<std::size_t>(j - 1)];
      for (std::size_t n = 0; n < prec; ++n) gi[n] -= c * gj[n];
    }
  }
  return g;
}

// b_n of T_m g for n < out_prec, integer version.
IntSeries hecke_int(const IntSeries& a, int k, unsigned m, std::size_t out_prec) {
  IntSeries b(out_prec, 0);
  for (std::size_t n = 0; n < out_prec; ++n) {
    if (n == 0) {
      // constant term: sum_{d|m} d^{k-1} a_0
      for (auto d : exact::divisors(m)) b[0] += exact::ipow(Integer(static_cast<unsigned long>(d)), static_cast<unsigned long>(k - 1)) * a[0];
      continue;
    }
    const std::uint64_t g = std::gcd<std::uint64_t, std::uint64_t>(m, n);
    for (auto d : exact::divisors(g)) {
      b[n] += exact::ipow(Integer(static_cast<unsigned long>(d)), static_cast<unsigned long>(k - 1)) *
              a[static_cast<std::size_t>(m * n / (d * d))];
    }
  }
  return b;
}

}  // namespace

QExpansion operator+(const QExpansion& a, const QExpansion& b) {
  require(a.weight == b.weight && a.level == b.level, "adding forms of different weight or level");
  QExpansion r{a.weight, a.level, {}};
  const std::size_t p = std::min(a.prec(), b.prec());
  for (std::size_t i = 0; i < p; ++i) r.coeffs.push_back(a.coeffs[i] + b.coeffs[i]);
  return r;
}

QExpansion operator-(const QExpansion& a, const QExpansion& b) { return a + Rational(-1) * b; }

QExpansion operator*(const QExpansion& a, const QExpansion& b) {
  require(a.level == b.level, "multiplying forms of different level");
  QExpansion r{a.weight + b.weight, a.level, {}};
  const std::size_t p = std::min(a.prec(), b.prec());
  r.coeffs.assign(p, Rational(0));
  for (std::size_t i = 0; i < p; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; i + j < p; ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return r;
}

QExpansion operator*(const Rational& c, const QExpansion& a) {
  QExpansion r = a;
  for (auto& x : r.coeffs) x *= c;
  return r;
}

QExpansion eisenstein(int k, std::size_t prec) {
  require(k >= 4 && k % 2 == 0, "Eisenstein series needs even weight >= 4");
  require(prec >= 1, "precision must be positive");
  const Rational scale = Rational(-2 * k) / exact::bernoulli(static_cast<unsigned>(k));
  IntSeries s = sigma_series(k, prec);
  QExpansion q;
  q.weight = k;
  q.coeffs.resize(prec);
  q.coeffs[0] = 1;
  for (std::size_t n = 1; n < prec; ++n) q.coeffs[n] = scale * Rational(s[n]);
  return q;
}

QExpansion delta(std::size_t prec) {
  require(prec >= 2, "precision must be at least 2");
  return from_int(delta_int(prec), 12);
}

int cusp_dimension(int k) {
  if (k < 12 || k % 2 != 0) return 0;
  return k / 12 - (k % 12 == 2 ? 1 : 0);
}

std::vector<QExpansion> miller_basis(int k, std::size_t prec) {
  require(k % 2 == 0, "weight must be even");
  const int d = cusp_dimension(k);
  if (d > 0 && prec <= static_cast<std::size_t>(d)) throw PreconditionError("insufficient precision");
  std::vector<QExpansion> out;
  for (auto& g : miller_int(k, prec)) out.push_back(from_int(g, k));
  return out;
}

QExpansion hecke_op(const QExpansion& g, unsigned m) {
  require(m >= 1, "Hecke index must be positive");
  require(g.level == 1, "Hecke operators are implemented at level 1 only");
  require(g.prec() >= 1, "insufficient precision");
  const std::size_t out_prec = (g.prec() - 1) / m + 1;
  QExpansion r{g.weight, g.level, std::vector<Rational>(out_prec, Rational(0))};
  for (std::size_t n = 0; n < out_prec; ++n) {
    const std::uint64_t gg = n == 0 ? m : std::gcd<std::uint64_t, std::uint64_t>(m, n);
    for (auto d : exact::divisors(gg)) {
      const Rational dk(exact::ipow(Integer(static_cast<unsigned long>(d)), static_cast<unsigned long>(g.weight - 1)));
      const std::size_t idx = n == 0 ? 0 : static_cast<std::size_t>(m * n / (d * d));
      r.coeffs[n] += dk * g.coeffs[idx];
    }
  }
  return r;
}

exact::Matrix<Rational> hecke_matrix(int k, unsigned m) {
  require(m >= 1, "Hecke index must be positive");
  const int d = cusp_dimension(k);
  const std::size_t prec = static_cast<std::size_t>(m) * static_cast<std::size_t>(d) + 1;
  const auto basis = miller_int(k, prec);
  exact::Matrix<Rational> M(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d)));
  for (int i = 0; i < d; ++i) {
    IntSeries t = hecke_int(basis[static_cast<std::size_t>(i)], k, m, static_cast<std::size_t>(d) + 1);
    for (int j = 0; j < d; ++j) M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j + 1)];
  }
  return M;
}

const NFElement& EigenSystem::at(std::uint64_t q) const {
  auto it = values.find(q);
  if (it == values.end()) throw PreconditionError("missing eigenvalue at q = " + std::to_string(q));
  return it->second;
}

std::size_t required_precision(int k, std::uint64_t max_prime) {
  const auto d = static_cast<std::size_t>(cusp_dimension(k));
  return static_cast<std::size_t>(std::max<std::uint64_t>(max_prime, 3)) * (d + 1) + 1;
}

std::vector<EigenSystem> eigen_systems_level1(int k, const std::vector<std::uint64_t>& primes,
                                              std::size_t prec) {
  require(k % 2 == 0 && k >= 4, "weight must be even and at least 4");
  const int d = cusp_dimension(k);
  std::vector<EigenSystem> out;
  if (d == 0) return out;
  std::uint64_t qmax = 3;
  for (auto q : primes) {
    require(exact::is_prime(q), std::to_string(q) + " is not prime");
    qmax = std::max(qmax, q);
  }
  if (prec < required_precision(k, qmax)) {
    throw PreconditionError("insufficient precision: need at least " +
                            std::to_string(required_precision(k, qmax)) + " coefficients");
  }
  const auto basis = miller_int(k, prec);
  const auto du = static_cast<std::size_t>(d);

  // Primitive element T_2 + c T_3 with squarefree characteristic polynomial.
  auto t2 = hecke_matrix(k, 2);
  auto t3 = hecke_matrix(k, 3);
  exact::Matrix<Rational> M;
  exact::PolyQ cp;
  for (long c = 0;; ++c) {
    M = t2;
    for (std::size_t i = 0; i < du; ++i)
      for (std::size_t j = 0; j < du; ++j) M[i][j] += Rational(c) * t3[i][j];
    cp = exact::charpoly(M);
    if (gcd(cp, cp.derivative()).degree() == 0) break;
    if (c > 50) throw ComputationError("T2 does not separate; no separating T2 + c*T3 found");
  }

  for (auto& [h, mult] : exact::factor_poly_rational(cp).factors) {
    auto K = nf::NumberField::create(h);
    const NFElement zero = NFElement::from_rational(K, 0);
    const NFElement one = NFElement::from_rational(K, 1);
    const NFElement theta = NFElement::generator(K);
    // (M^T - theta) c = 0
    exact::Matrix<NFElement> A(du, std::vector<NFElement>(du, zero));
    for (std::size_t i = 0; i < du; ++i)
      for (std::size_t j = 0; j < du; ++j) {
        A[i][j] = NFElement::from_rational(K, M[j][i]);
        if (i == j) A[i][j] = A[i][j] - theta;
      }
    auto ns = exact::nullspace(A, du, zero, one);
    if (ns.size() != 1) throw ComputationError("eigenspace is not one-dimensional");
    auto vec = ns[0];
    if (vec[0].is_zero()) throw ComputationError("eigenvector has vanishing first coefficient");
    const NFElement scale = vec[0].inverse();
    for (auto& v : vec) v = v * scale;

    EigenSystem sys;
    sys.weight = k;
    sys.level = 1;
    sys.field = K;
    sys.expansion.assign(prec, zero);
    for (std::size_t n = 1; n < prec; ++n) {
      NFElement a = zero;
      for (std::size_t i = 0; i < du; ++i) {
        const Integer& gn = basis[i][n];
        if (gn != 0) a = a + vec[i] * NFElement::from_rational(K, Rational(gn));
      }
      sys.expansion[n] = a;
    }
    for (auto q : primes) sys.values.emplace(q, sys.expansion[static_cast<std::size_t>(q)]);
    out.push_back(std::move(sys));
  }
  return out;
}

}  // namespace eiscong::mf
