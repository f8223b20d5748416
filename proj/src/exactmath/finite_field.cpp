#include "eiscong/exactmath/finite_field.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "eiscong/error.hpp"
#include "eiscong/exactmath/modpoly.hpp"

namespace eiscong::exact {

namespace {

using PF = SmallPrimeField;

modpoly::Poly<PF> to_poly(const ResidueField::Repr& r, const PF& fd) {
  modpoly::Poly<PF> p(r.begin(), r.end());
  modpoly::trim(fd, p);
  return p;
}

}  // namespace

ResidueField::ResidueField(FpPoly modulus)
    : ell_(modulus.modulus()), f_(static_cast<int>(modulus.degree())), modulus_(std::move(modulus)) {}

std::shared_ptr<const ResidueField> ResidueField::create(const FpPoly& modulus) {
  require(is_prime(modulus.modulus()), "residue characteristic must be prime");
  require(modulus.degree() >= 1 && modulus.is_monic(), "residue field modulus must be monic of positive degree");
  PF fd{modulus.modulus()};
  modpoly::Poly<PF> m(modulus.coeffs().begin(), modulus.coeffs().end());
  require(modpoly::is_irreducible(fd, m), "residue field modulus " + modulus.to_string() + " is reducible");
  return std::shared_ptr<const ResidueField>(new ResidueField(modulus));
}

std::shared_ptr<const ResidueField> ResidueField::standard(std::uint64_t ell, int f) {
  require(is_prime(ell), "residue characteristic must be prime");
  require(f >= 1, "extension degree must be positive");
  PF fd{ell};
  if (f == 1) return create(FpPoly(ell, {0, 1}));
  // Enumerate monic polynomials of degree f by increasing index of the lower
  // coefficients (symmetric order is not needed for a fixed presentation).
  for (std::uint64_t idx = 0;; ++idx) {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(f) + 1, 0);
    std::uint64_t t = idx;
    for (int i = 0; i < f; ++i) {
      c[static_cast<std::size_t>(i)] = t % ell;
      t /= ell;
    }
    if (t != 0) break;
    c[static_cast<std::size_t>(f)] = 1;
    if (c[0] == 0) continue;
    modpoly::Poly<PF> m(c.begin(), c.end());
    if (modpoly::is_irreducible(fd, m)) {
      return std::shared_ptr<const ResidueField>(new ResidueField(FpPoly(ell, c)));
    }
  }
  throw ComputationError("no irreducible polynomial found");
}

ResidueField::Repr ResidueField::one() const { return from_u64(1); }

ResidueField::Repr ResidueField::gen() const { return reduce({0, 1}); }

ResidueField::Repr ResidueField::from_u64(std::uint64_t n) const {
  Repr r = zero();
  r[0] = n % ell_;
  return r;
}

ResidueField::Repr ResidueField::from_index(std::uint64_t index) const {
  Repr r = zero();
  for (int i = 0; i < f_; ++i) {
    r[static_cast<std::size_t>(i)] = index % ell_;
    index /= ell_;
  }
  return r;
}

ResidueField::Repr ResidueField::add(const Repr& a, const Repr& b) const {
  Repr r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t s = a[i] + b[i];
    r[i] = s >= ell_ ? s - ell_ : s;
  }
  return r;
}

ResidueField::Repr ResidueField::sub(const Repr& a, const Repr& b) const {
  Repr r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + (ell_ - b[i]);
  return r;
}

ResidueField::Repr ResidueField::neg(const Repr& a) const {
  Repr r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] == 0 ? 0 : ell_ - a[i];
  return r;
}

ResidueField::Repr ResidueField::reduce(const std::vector<std::uint64_t>& poly) const {
  std::vector<std::uint64_t> r(poly.begin(), poly.end());
  for (auto& c : r) c %= ell_;
  const auto& m = modulus_.coeffs();
  for (long i = static_cast<long>(r.size()) - 1; i >= f_; --i) {
    const std::uint64_t c = r[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    // subtract c * x^(i-f) * modulus (monic)
    for (int j = 0; j <= f_; ++j) {
      auto& slot = r[static_cast<std::size_t>(i - f_ + j)];
      const std::uint64_t t = mulmod(c, m[static_cast<std::size_t>(j)], ell_);
      slot = slot >= t ? slot - t : slot + (ell_ - t);
    }
  }
  r.resize(static_cast<std::size_t>(f_), 0);
  return r;
}

ResidueField::Repr ResidueField::mul(const Repr& a, const Repr& b) const {
  if (f_ == 1) return Repr{mulmod(a[0], b[0], ell_)};
  std::vector<std::uint64_t> prod(2 * static_cast<std::size_t>(f_) - 1, 0);
  for (int i = 0; i < f_; ++i) {
    if (a[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j < f_; ++j) {
      auto& slot = prod[static_cast<std::size_t>(i + j)];
      slot = (slot + mulmod(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)], ell_)) % ell_;
    }
  }
  return reduce(prod);
}

ResidueField::Repr ResidueField::inv(const Repr& a) const {
  if (is_zero(a)) throw PreconditionError("inverse of zero in residue field");
  if (f_ == 1) return Repr{powmod(a[0], ell_ - 2, ell_)};
  PF fd{ell_};
  modpoly::Poly<PF> m(modulus_.coeffs().begin(), modulus_.coeffs().end());
  auto [g, s] = modpoly::gcd_cofactor(fd, to_poly(a, fd), m);
  return reduce(std::vector<std::uint64_t>(s.begin(), s.end()));
}

ResidueField::Repr ResidueField::pow(const Repr& a, const Integer& e) const {
  if (e < 0) return pow(inv(a), Integer(-e));
  Repr result = one();
  Repr base = a;
  const auto bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (long i = static_cast<long>(bits) - 1; i >= 0; --i) {
    result = mul(result, result);
    if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) result = mul(result, base);
  }
  return result;
}

bool ResidueField::is_zero(const Repr& a) const {
  for (auto c : a) {
    if (c != 0) return false;
  }
  return true;
}

FFElement::FFElement(ResidueFieldPtr field, ResidueField::Repr repr)
    : field_(std::move(field)), repr_(std::move(repr)) {
  require(field_ != nullptr, "element without field");
  if (repr_.size() != static_cast<std::size_t>(field_->degree())) repr_ = field_->reduce(repr_);
}

FFElement FFElement::from_integer(ResidueFieldPtr field, const Integer& n) {
  auto r = field->from_u64(mod_u64(n, field->ell()));
  return FFElement(std::move(field), std::move(r));
}

FFElement FFElement::from_rational(ResidueFieldPtr field, const Rational& q) {
  auto r = field->from_u64(mod_u64(q, field->ell()));
  return FFElement(std::move(field), std::move(r));
}

FFElement FFElement::generator(ResidueFieldPtr field) {
  auto r = field->gen();
  return FFElement(std::move(field), std::move(r));
}

bool FFElement::is_zero() const { return field_->is_zero(repr_); }

bool FFElement::in_prime_field() const {
  for (std::size_t i = 1; i < repr_.size(); ++i) {
    if (repr_[i] != 0) return false;
  }
  return true;
}

void FFElement::check_same_field(const FFElement& other) const {
  if (field_ != other.field_ && !field_->same_as(*other.field_)) {
    throw PreconditionError("finite field elements from different fields");
  }
}

FFElement FFElement::operator-() const { return FFElement(field_, field_->neg(repr_)); }

FFElement operator+(const FFElement& a, const FFElement& b) {
  a.check_same_field(b);
  return FFElement(a.field_, a.field_->add(a.repr_, b.repr_));
}

FFElement operator-(const FFElement& a, const FFElement& b) {
  a.check_same_field(b);
  return FFElement(a.field_, a.field_->sub(a.repr_, b.repr_));
}

FFElement operator*(const FFElement& a, const FFElement& b) {
  a.check_same_field(b);
  return FFElement(a.field_, a.field_->mul(a.repr_, b.repr_));
}

FFElement operator/(const FFElement& a, const FFElement& b) { return a * b.inverse(); }

bool operator==(const FFElement& a, const FFElement& b) {
  a.check_same_field(b);
  return a.repr_ == b.repr_;
}

FFElement FFElement::inverse() const { return FFElement(field_, field_->inv(repr_)); }

FFElement FFElement::pow(const Integer& e) const { return FFElement(field_, field_->pow(repr_, e)); }

FFElement FFElement::frobenius() const {
  return pow(Integer(static_cast<unsigned long>(field_->ell())));
}

FpPoly FFElement::minimal_polynomial() const {
  std::vector<FFElement> orbit{*this};
  for (;;) {
    FFElement next = orbit.back().frobenius();
    if (next == orbit.front()) break;
    orbit.push_back(next);
  }
  // prod (x - c) over the conjugates; coefficients land in F_ell.
  std::vector<FFElement> poly{FFElement::from_integer(field_, 1)};
  for (auto& c : orbit) {
    std::vector<FFElement> next(poly.size() + 1, FFElement::from_integer(field_, 0));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = next[i + 1] + poly[i];
      next[i] = next[i] - c * poly[i];
    }
    poly = std::move(next);
  }
  std::vector<std::uint64_t> coeffs;
  for (auto& c : poly) {
    if (!c.in_prime_field()) throw ComputationError("minimal polynomial left the prime field");
    coeffs.push_back(c.repr()[0]);
  }
  return FpPoly(field_->ell(), std::move(coeffs));
}

std::string FFElement::to_string() const {
  std::vector<std::string> cs;
  for (auto c : repr_) cs.push_back(std::to_string(c));
  return format_poly(cs, "g");
}

bool ff_pow_is_one(const Integer& base, const Integer& exp, const ResidueField& field) {
  require(exp >= 0, "exponent must be nonnegative");
  const std::uint64_t b = mod_u64(base, field.ell());
  require(b != 0, "base is zero in the residue field");
  if (exp == 0) return true;
  // base lies in the prime field, so the test reduces to Z/ell.
  Integer e = exp % Integer(static_cast<unsigned long>(field.ell() - 1));
  return powmod(b, e.get_ui(), field.ell()) == 1;
}

std::vector<FFElement> roots_in(const FpPoly& g, const ResidueFieldPtr& E) {
  require(g.modulus() == E->ell(), "polynomial and field of different characteristic");
  require(g.degree() >= 1, "roots of a constant polynomial");
  using namespace modpoly;
  const ResidueFieldOps fd{E.get()};
  Poly<ResidueFieldOps> f;
  for (auto c : g.coeffs()) f.push_back(E->from_u64(c));
  trim(fd, f);
  f = monic(fd, f);
  const Integer q = E->order();
  // Product of the distinct linear factors: gcd(f, x^q - x).
  const Poly<ResidueFieldOps> x = monomial_x(fd);
  Poly<ResidueFieldOps> split = gcd(fd, sub(fd, powmod(fd, rem(fd, x, f), q, f), x), f);

  std::vector<FFElement> roots;
  std::vector<Poly<ResidueFieldOps>> work{split};
  std::mt19937_64 rng(0x600d5eedULL);
  const bool even = E->ell() == 2;
  const long abs_degree = E->degree();
  while (!work.empty()) {
    Poly<ResidueFieldOps> h = work.back();
    work.pop_back();
    const long n = degree<ResidueFieldOps>(h);
    if (n <= 0) continue;
    if (n == 1) {
      roots.emplace_back(E, fd.neg(h[0]));
      continue;
    }
    for (;;) {
      ResidueField::Repr a = E->zero();
      for (auto& c : a) c = rng() % E->ell();
      Poly<ResidueFieldOps> t{a, E->one()};  // x + a
      Poly<ResidueFieldOps> b;
      if (even) {
        // Absolute trace of a*x to F_2.
        Poly<ResidueFieldOps> ax = rem(fd, Poly<ResidueFieldOps>{E->zero(), a}, h), acc = ax;
        for (long i = 1; i < abs_degree; ++i) {
          ax = mulmod_poly(fd, ax, ax, h);
          acc = add(fd, acc, ax);
        }
        b = acc;
      } else {
        b = sub(fd, powmod(fd, rem(fd, t, h), (q - 1) / 2, h), constant(fd, fd.one()));
      }
      Poly<ResidueFieldOps> d = gcd(fd, b, h);
      const long dd = degree<ResidueFieldOps>(d);
      if (dd > 0 && dd < n) {
        work.push_back(d);
        work.push_back(divrem(fd, h, d).first);
        break;
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

FFElement embed_into(const FFElement& x, const FFElement& image_of_gen) {
  require(x.field()->ell() == image_of_gen.field()->ell(), "fields of different characteristic");
  const auto& E = image_of_gen.field();
  FFElement out = FFElement::from_integer(E, 0), power = FFElement::from_integer(E, 1);
  for (auto c : x.repr()) {
    out = out + FFElement::from_integer(E, Integer(static_cast<unsigned long>(c))) * power;
    power = power * image_of_gen;
  }
  return out;
}

}  // namespace eiscong::exact
