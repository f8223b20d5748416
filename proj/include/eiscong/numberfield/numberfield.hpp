#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "eiscong/exactmath/finite_field.hpp"
#include "eiscong/exactmath/integer.hpp"
#include "eiscong/exactmath/matrix.hpp"
#include "eiscong/exactmath/poly.hpp"

namespace eiscong::nf {

using exact::FFElement;
using exact::FpPoly;
using exact::Integer;
using exact::PolyQ;
using exact::Rational;
using exact::ResidueFieldPtr;

/// Q[x]/(minpoly) in the power basis of the root class theta.
class NumberField {
 public:
  /// minpoly must be monic with integer coefficients and irreducible over Q.
  static std::shared_ptr<const NumberField> create(const PolyQ& minpoly);
  /// Q presented as Q[x]/(x).
  static std::shared_ptr<const NumberField> rationals();

  const PolyQ& minpoly() const { return minpoly_; }
  int degree() const { return static_cast<int>(minpoly_.degree()); }
  const Rational& discriminant() const { return disc_; }
  bool same_as(const NumberField& other) const { return minpoly_ == other.minpoly_; }

 private:
  explicit NumberField(PolyQ minpoly);
  PolyQ minpoly_;
  Rational disc_;
};

using NumberFieldPtr = std::shared_ptr<const NumberField>;

class NFElement {
 public:
  NFElement() = default;
  /// coords in the power basis; shorter lists are zero-padded, longer ones
  /// are reduced modulo the minimal polynomial.
  NFElement(NumberFieldPtr field, std::vector<Rational> coords);
  static NFElement from_rational(NumberFieldPtr field, const Rational& q);
  static NFElement generator(NumberFieldPtr field);

  const NumberFieldPtr& field() const { return field_; }
  const std::vector<Rational>& coords() const { return coords_; }
  bool is_zero() const;
  bool is_rational() const;
  /// Value when is_rational(); throws otherwise.
  Rational to_rational() const;

  NFElement operator-() const;
  friend NFElement operator+(const NFElement& a, const NFElement& b);
  friend NFElement operator-(const NFElement& a, const NFElement& b);
  friend NFElement operator*(const NFElement& a, const NFElement& b);
  friend NFElement operator/(const NFElement& a, const NFElement& b);
  friend bool operator==(const NFElement& a, const NFElement& b);
  friend bool operator!=(const NFElement& a, const NFElement& b) { return !(a == b); }

  NFElement inverse() const;
  NFElement pow(unsigned long e) const;
  /// Matrix of multiplication by this element on the power basis (columns
  /// are images of basis vectors).
  exact::Matrix<Rational> multiplication_matrix() const;
  Rational norm() const;
  Rational trace() const;
  /// Characteristic polynomial of multiplication by this element.
  PolyQ charpoly() const;
  PolyQ as_polynomial() const { return PolyQ(coords_); }

  std::string to_string(const std::string& var = "a") const;

 private:
  void check_same_field(const NFElement& other) const;
  NumberFieldPtr field_;
  std::vector<Rational> coords_;
};

inline NFElement field_inverse(const NFElement& x) { return x.inverse(); }

/// A prime of the power-basis order above ell, read off from one
/// irreducible factor of the minimal polynomial mod ell.
struct PrimeIdeal {
  std::uint64_t ell = 0;
  FpPoly factor;
  int e = 1;
  int f = 1;
  ResidueFieldPtr residue;
};

struct PrimeSplitting {
  std::vector<PrimeIdeal> primes;
  /// Set when minpoly mod ell is not squarefree and ell^2 divides the
  /// discriminant: e and f are then only a heuristic.
  bool order_may_be_nonmaximal = false;
  std::string warning;
};

PrimeSplitting primes_above(const NumberField& field, std::uint64_t ell);

/// Image of a in the residue field of P. Throws "not integral at ell" when a
/// coordinate denominator is divisible by ell.
FFElement reduce_mod(const NFElement& a, const PrimeIdeal& P);

/// Whether a and b agree under some embeddings of their residue fields into
/// a common extension of F_ell.
bool residue_match(const FFElement& a, const FFElement& b);

}  // namespace eiscong::nf
