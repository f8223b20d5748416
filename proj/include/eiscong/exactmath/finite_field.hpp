#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "eiscong/exactmath/integer.hpp"
#include "eiscong/exactmath/poly.hpp"

namespace eiscong::exact {

/// The finite field F_ell[x]/(modulus) with ell^f elements.
class ResidueField {
 public:
  /// Coefficients of a reduced representative, length exactly f.
  using Repr = std::vector<std::uint64_t>;

  /// modulus must be monic irreducible over F_ell; verified.
  static std::shared_ptr<const ResidueField> create(const FpPoly& modulus);
  /// F_{ell^f} presented by the canonically smallest monic irreducible of
  /// degree f.
  static std::shared_ptr<const ResidueField> standard(std::uint64_t ell, int f);

  std::uint64_t ell() const { return ell_; }
  int degree() const { return f_; }
  const FpPoly& modulus() const { return modulus_; }
  Integer order() const { return ipow(Integer(static_cast<unsigned long>(ell_)), static_cast<unsigned long>(f_)); }

  Repr zero() const { return Repr(static_cast<std::size_t>(f_), 0); }
  Repr one() const;
  Repr gen() const;
  Repr from_u64(std::uint64_t n) const;
  /// Element with base-ell digits of index as coordinates.
  Repr from_index(std::uint64_t index) const;

  Repr add(const Repr& a, const Repr& b) const;
  Repr sub(const Repr& a, const Repr& b) const;
  Repr neg(const Repr& a) const;
  Repr mul(const Repr& a, const Repr& b) const;
  Repr inv(const Repr& a) const;
  Repr pow(const Repr& a, const Integer& e) const;
  bool is_zero(const Repr& a) const;
  /// Reduce an arbitrary polynomial in the generator.
  Repr reduce(const std::vector<std::uint64_t>& poly) const;

  bool same_as(const ResidueField& other) const {
    return ell_ == other.ell_ && modulus_ == other.modulus_;
  }

 private:
  explicit ResidueField(FpPoly modulus);
  std::uint64_t ell_;
  int f_;
  FpPoly modulus_;
};

using ResidueFieldPtr = std::shared_ptr<const ResidueField>;

/// Element of a ResidueField.
class FFElement {
 public:
  FFElement() = default;
  FFElement(ResidueFieldPtr field, ResidueField::Repr repr);
  static FFElement from_integer(ResidueFieldPtr field, const Integer& n);
  static FFElement from_rational(ResidueFieldPtr field, const Rational& q);
  static FFElement generator(ResidueFieldPtr field);

  const ResidueFieldPtr& field() const { return field_; }
  const ResidueField::Repr& repr() const { return repr_; }
  bool is_zero() const;
  /// True when the element lies in the prime field F_ell.
  bool in_prime_field() const;

  FFElement operator-() const;
  friend FFElement operator+(const FFElement& a, const FFElement& b);
  friend FFElement operator-(const FFElement& a, const FFElement& b);
  friend FFElement operator*(const FFElement& a, const FFElement& b);
  friend FFElement operator/(const FFElement& a, const FFElement& b);
  friend bool operator==(const FFElement& a, const FFElement& b);
  friend bool operator!=(const FFElement& a, const FFElement& b) { return !(a == b); }
  friend bool operator<(const FFElement& a, const FFElement& b) { return a.repr_ < b.repr_; }

  FFElement inverse() const;
  FFElement pow(const Integer& e) const;
  FFElement frobenius() const;
  /// Monic minimal polynomial over F_ell.
  FpPoly minimal_polynomial() const;

  std::string to_string() const;

 private:
  void check_same_field(const FFElement& other) const;
  ResidueFieldPtr field_;
  ResidueField::Repr repr_;
};

inline FFElement field_inverse(const FFElement& x) { return x.inverse(); }

/// base^exp == 1 in F, where base is a rational integer coprime to ell.
/// exp == 0 gives true.
bool ff_pow_is_one(const Integer& base, const Integer& exp, const ResidueField& field);

/// Distinct roots in E of a polynomial over F_ell, sorted by representation.
std::vector<FFElement> roots_in(const FpPoly& g, const ResidueFieldPtr& E);

/// Image of x under the embedding of its field sending the generator to
/// image_of_gen (a root of the modulus of x's field).
FFElement embed_into(const FFElement& x, const FFElement& image_of_gen);

/// Field-policy adaptor so modpoly algorithms can run over F_{ell^f}.
struct ResidueFieldOps {
  using Elem = ResidueField::Repr;
  const ResidueField* field;

  Elem zero() const { return field->zero(); }
  Elem one() const { return field->one(); }
  Elem add(const Elem& a, const Elem& b) const { return field->add(a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return field->sub(a, b); }
  Elem neg(const Elem& a) const { return field->neg(a); }
  Elem mul(const Elem& a, const Elem& b) const { return field->mul(a, b); }
  Elem inv(const Elem& a) const { return field->inv(a); }
  bool is_zero(const Elem& a) const { return field->is_zero(a); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
};

}  // namespace eiscong::exact
