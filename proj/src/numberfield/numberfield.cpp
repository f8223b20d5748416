#include "eiscong/numberfield/numberfield.hpp"

#include "eiscong/error.hpp"
#include "eiscong/exactmath/factor.hpp"

namespace eiscong::nf {

NumberField::NumberField(PolyQ minpoly) : minpoly_(std::move(minpoly)) {
  disc_ = minpoly_.degree() == 1 ? Rational(1) : exact::discriminant(minpoly_);
}

std::shared_ptr<const NumberField> NumberField::create(const PolyQ& minpoly) {
  require(minpoly.degree() >= 1, "minimal polynomial must have positive degree");
  require(minpoly.is_monic() && minpoly.has_integer_coeffs(),
          "minimal polynomial must be monic with integer coefficients");
  require(exact::is_irreducible(minpoly), "minimal polynomial " + minpoly.to_string() + " is reducible");
  return std::shared_ptr<const NumberField>(new NumberField(minpoly));
}

std::shared_ptr<const NumberField> NumberField::rationals() {
  static const auto q = std::shared_ptr<const NumberField>(new NumberField(PolyQ::x()));
  return q;
}

NFElement::NFElement(NumberFieldPtr field, std::vector<Rational> coords) : field_(std::move(field)) {
  require(field_ != nullptr, "number field element without field");
  const auto d = static_cast<std::size_t>(field_->degree());
  if (coords.size() > d) {
    coords = PolyQ(std::move(coords)).divrem(field_->minpoly()).second.coeffs();
  }
  coords.resize(d, Rational(0));
  coords_ = std::move(coords);
}

NFElement NFElement::from_rational(NumberFieldPtr field, const Rational& q) {
  return NFElement(std::move(field), std::vector<Rational>{q});
}

NFElement NFElement::generator(NumberFieldPtr field) {
  return NFElement(std::move(field), std::vector<Rational>{Rational(0), Rational(1)});
}

bool NFElement::is_zero() const {
  for (auto& c : coords_) {
    if (c != 0) return false;
  }
  return true;
}

bool NFElement::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i) {
    if (coords_[i] != 0) return false;
  }
  return true;
}

Rational NFElement::to_rational() const {
  if (!is_rational()) throw PreconditionError("element " + to_string() + " is not rational");
  return coords_[0];
}

void NFElement::check_same_field(const NFElement& other) const {
  if (field_ != other.field_ && !field_->same_as(*other.field_)) {
    throw PreconditionError("number field elements from different fields");
  }
}

NFElement NFElement::operator-() const {
  auto c = coords_;
  for (auto& x : c) x = -x;
  return NFElement(field_, std::move(c));
}

NFElement operator+(const NFElement& a, const NFElement& b) {
  a.check_same_field(b);
  auto c = a.coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords_[i];
  return NFElement(a.field_, std::move(c));
}

NFElement operator-(const NFElement& a, const NFElement& b) {
  a.check_same_field(b);
  auto c = a.coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coords_[i];
  return NFElement(a.field_, std::move(c));
}

NFElement operator*(const NFElement& a, const NFElement& b) {
  a.check_same_field(b);
  if (a.coords_.size() == 1) return NFElement(a.field_, {a.coords_[0] * b.coords_[0]});
  PolyQ prod = PolyQ(a.coords_) * PolyQ(b.coords_);
  return NFElement(a.field_, prod.divrem(a.field_->minpoly()).second.coeffs());
}

NFElement operator/(const NFElement& a, const NFElement& b) { return a * b.inverse(); }

bool operator==(const NFElement& a, const NFElement& b) {
  a.check_same_field(b);
  return a.coords_ == b.coords_;
}

NFElement NFElement::inverse() const {
  if (is_zero()) throw PreconditionError("inverse of zero in a number field");
  if (coords_.size() == 1) return NFElement(field_, {Rational(1) / coords_[0]});
  // s*a + t*m = 1 by the extended Euclidean algorithm over Q.
  PolyQ r0 = field_->minpoly(), r1 = PolyQ(coords_);
  PolyQ s0, s1 = PolyQ::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divrem(r1);
    PolyQ s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw ComputationError("element is not invertible; minimal polynomial reducible");
  PolyQ inv = (Rational(1) / r0.leading()) * s0;
  return NFElement(field_, inv.coeffs());
}

NFElement NFElement::pow(unsigned long e) const {
  NFElement result = from_rational(field_, 1);
  NFElement base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

exact::Matrix<Rational> NFElement::multiplication_matrix() const {
  const auto d = static_cast<std::size_t>(field_->degree());
  exact::Matrix<Rational> m(d, std::vector<Rational>(d, Rational(0)));
  NFElement basis = from_rational(field_, 1);
  const NFElement theta = generator(field_);
  for (std::size_t j = 0; j < d; ++j) {
    NFElement img = *this * basis;
    for (std::size_t i = 0; i < d; ++i) m[i][j] = img.coords_[i];
    basis = basis * theta;
  }
  return m;
}

Rational NFElement::norm() const {
  return exact::determinant(multiplication_matrix(), Rational(0), Rational(1));
}

Rational NFElement::trace() const {
  auto m = multiplication_matrix();
  Rational t = 0;
  for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
  return t;
}

PolyQ NFElement::charpoly() const { return exact::charpoly(multiplication_matrix()); }

std::string NFElement::to_string(const std::string& var) const {
  std::vector<std::string> cs;
  for (auto& c : coords_) cs.push_back(c.get_str());
  return exact::format_poly(cs, var);
}

PrimeSplitting primes_above(const NumberField& field, std::uint64_t ell) {
  require(exact::is_prime(ell), std::to_string(ell) + " is not prime");
  PrimeSplitting out;
  bool squarefree = true;
  for (auto& [g, m] : exact::factor_poly_mod(field.minpoly(), ell)) {
    PrimeIdeal P;
    P.ell = ell;
    P.factor = g;
    P.e = m;
    P.f = static_cast<int>(g.degree());
    P.residue = exact::ResidueField::create(g);
    if (m > 1) squarefree = false;
    out.primes.push_back(std::move(P));
  }
  if (!squarefree && field.degree() > 1) {
    const Integer ell2 = Integer(static_cast<unsigned long>(ell)) * Integer(static_cast<unsigned long>(ell));
    const Rational& disc = field.discriminant();
    if (disc != 0 && mpz_divisible_p(disc.get_num_mpz_t(), ell2.get_mpz_t())) {
      out.order_may_be_nonmaximal = true;
      out.warning = "order may be non-maximal at " + std::to_string(ell) + "; e/f heuristic";
    }
  }
  return out;
}

FFElement reduce_mod(const NFElement& a, const PrimeIdeal& P) {
  std::vector<std::uint64_t> poly;
  for (auto& c : a.coords()) {
    if (mpz_fdiv_ui(c.get_den_mpz_t(), P.ell) == 0) {
      throw PreconditionError("not integral at " + std::to_string(P.ell));
    }
    poly.push_back(exact::mod_u64(c, P.ell));
  }
  return FFElement(P.residue, P.residue->reduce(poly));
}

bool residue_match(const FFElement& a, const FFElement& b) {
  require(a.field()->ell() == b.field()->ell(), "residue fields of different characteristic");
  // Images can be made equal exactly when both are roots of the same
  // irreducible polynomial over F_ell.
  return a.minimal_polynomial() == b.minimal_polynomial();
}

}  // namespace eiscong::nf
