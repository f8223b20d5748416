#include "eiscong/exactmath/factor.hpp"

#include <algorithm>

#include "eiscong/error.hpp"
#include "eiscong/exactmath/modpoly.hpp"

namespace eiscong::exact {

namespace {

using SmallPoly = modpoly::Poly<SmallPrimeField>;
using BigPoly = modpoly::Poly<BigPrimeField>;

SmallPoly to_small(const PolyQ& f, const SmallPrimeField& fd) {
  SmallPoly r;
  for (auto& c : f.coeffs()) r.push_back(mod_u64(c, fd.p));
  modpoly::trim(fd, r);
  return r;
}

BigPoly to_big(const std::vector<Integer>& f, const BigPrimeField& fd) {
  BigPoly r;
  for (auto& c : f) r.push_back(fd.reduce(c));
  modpoly::trim(fd, r);
  return r;
}

// Symmetric lift of a polynomial mod P to Z.
std::vector<Integer> lift(const BigPoly& g, const Integer& P) {
  std::vector<Integer> r;
  const Integer half = P / 2;
  for (auto& c : g) r.push_back(c > half ? Integer(c - P) : c);
  return r;
}

bool denominators_prime_to(const PolyQ& f, std::uint64_t ell) {
  for (auto& c : f.coeffs()) {
    if (mpz_fdiv_ui(c.get_den_mpz_t(), ell) == 0) return false;
  }
  return true;
}

// True if some small prime proves h irreducible by its factor pattern.
bool irreducible_by_pattern(const PolyQ& h) {
  const long n = h.degree();
  int tried = 0;
  for (std::uint64_t p : primes_up_to(400)) {
    if (tried >= 25) break;
    if (!denominators_prime_to(h, p)) continue;
    SmallPrimeField fd{p};
    SmallPoly hp = to_small(h, fd);
    if (modpoly::degree<SmallPrimeField>(hp) != n) continue;
    if (modpoly::degree<SmallPrimeField>(modpoly::gcd(fd, hp, modpoly::derivative(fd, hp))) > 0) continue;
    ++tried;
    if (modpoly::is_irreducible(fd, hp)) return true;
  }
  return false;
}

// Factors a primitive squarefree integer polynomial with positive leading
// coefficient into primitive irreducibles.
std::vector<PolyQ> zassenhaus(const std::vector<Integer>& h_in) {
  PolyQ h = PolyQ::from_integers(h_in);
  const long n = h.degree();
  if (n <= 1) return {h};
  if (irreducible_by_pattern(h)) return {h};

  // Coefficients of a factor g of h are bounded by 2^deg(g) * ||h||_2; the
  // candidate lc(h)/lc(g) * g adds a factor |lc(h)|.
  Integer norm2 = 0;
  for (auto& c : h_in) norm2 += c * c;
  Integer norm = sqrt(norm2) + 1;
  Integer lc = h_in.back();
  Integer bound = 2 * abs(lc) * (Integer(1) << static_cast<mp_bitcnt_t>(n)) * norm;
  Integer P = next_prime(bound);
  BigPrimeField fd{P};
  BigPoly hp;
  for (;;) {
    fd = BigPrimeField{P};
    hp = to_big(h_in, fd);
    if (modpoly::degree<BigPrimeField>(hp) == n &&
        modpoly::degree<BigPrimeField>(modpoly::gcd(fd, hp, modpoly::derivative(fd, hp))) == 0) {
      break;
    }
    P = next_prime(P);
  }

  std::vector<BigPoly> local;
  for (auto& [g, m] : modpoly::factor(fd, hp)) local.push_back(g);

  std::vector<PolyQ> found;
  std::vector<Integer> rest = h_in;
  PolyQ rest_q = h;
  std::size_t subset_size = 1;
  while (2 * subset_size <= local.size()) {
    bool progressed = false;
    const std::size_t r = local.size();
    std::vector<bool> pick(r, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(subset_size), true);
    do {
      BigPoly cand = modpoly::constant(fd, fd.reduce(rest.back()));
      for (std::size_t i = 0; i < r; ++i) {
        if (pick[i]) cand = modpoly::mul(fd, cand, local[i]);
      }
      PolyQ g = PolyQ::from_integers(lift(cand, P));
      g = PolyQ::from_integers(g.primitive_part());
      auto [quo, rem] = rest_q.divrem(g);
      if (rem.is_zero() && quo.has_integer_coeffs()) {
        found.push_back(g);
        rest_q = quo;
        rest = rest_q.primitive_part();
        rest_q = PolyQ::from_integers(rest);
        std::vector<BigPoly> keep;
        for (std::size_t i = 0; i < r; ++i) {
          if (!pick[i]) keep.push_back(local[i]);
        }
        local = std::move(keep);
        progressed = true;
        break;
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    if (!progressed) ++subset_size;
  }
  if (rest_q.degree() > 0) found.push_back(rest_q);
  return found;
}

}  // namespace

std::vector<std::pair<FpPoly, int>> factor_poly_mod(const PolyQ& f, std::uint64_t ell) {
  require(is_prime(ell), "modulus must be prime");
  require(!f.is_zero(), "cannot factor the zero polynomial");
  require(denominators_prime_to(f, ell), "coefficients not integral at " + std::to_string(ell));
  SmallPrimeField fd{ell};
  SmallPoly fp = to_small(f, fd);
  if (modpoly::degree<SmallPrimeField>(fp) != f.degree()) {
    throw PreconditionError("bad reduction: degree drops modulo " + std::to_string(ell));
  }
  std::vector<std::pair<FpPoly, int>> out;
  for (auto& [g, m] : modpoly::factor(fd, fp)) out.emplace_back(FpPoly(ell, g), m);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
  return out;
}

std::vector<std::pair<PolyQ, int>> squarefree_rational(const PolyQ& f_in) {
  require(!f_in.is_zero(), "squarefree decomposition of zero");
  std::vector<std::pair<PolyQ, int>> out;
  PolyQ f = f_in.monic();
  if (f.degree() <= 0) return out;
  // Yun's algorithm (characteristic zero).
  PolyQ a0 = gcd(f, f.derivative());
  PolyQ b = f.divrem(a0).first;
  PolyQ c = f.derivative().divrem(a0).first;
  PolyQ d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    PolyQ a = gcd(b, d);
    if (a.degree() > 0) out.emplace_back(a.monic(), i);
    b = b.divrem(a).first;
    c = d.divrem(a).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

RationalFactorization factor_poly_rational(const PolyQ& f) {
  require(!f.is_zero(), "cannot factor the zero polynomial");
  RationalFactorization result{f.leading(), {}};
  for (auto& [part, mult] : squarefree_rational(f)) {
    if (part.degree() > kMaxFactorDegree) {
      throw ComputationError("rational factorization supports squarefree parts of degree <= " +
                             std::to_string(kMaxFactorDegree) + ", got " +
                             std::to_string(part.degree()));
    }
    for (auto& g : zassenhaus(part.primitive_part())) result.factors.emplace_back(g.monic(), mult);
  }
  std::sort(result.factors.begin(), result.factors.end(),
            [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
  return result;
}

bool is_irreducible(const PolyQ& f) {
  if (f.degree() <= 0) return false;
  if (f.degree() == 1) return true;
  auto fac = factor_poly_rational(f);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

}  // namespace eiscong::exact
