#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "eiscong/exactmath/integer.hpp"

namespace eiscong::exact {

/// Univariate polynomial over Q, coefficients lowest degree first.
/// The zero polynomial has no coefficients; otherwise the leading
/// coefficient is nonzero.
class PolyQ {
 public:
  PolyQ() = default;
  explicit PolyQ(std::vector<Rational> coeffs);
  PolyQ(std::initializer_list<long> coeffs);

  static PolyQ constant(const Rational& c);
  static PolyQ x();
  static PolyQ from_integers(const std::vector<Integer>& coeffs);

  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(long i) const;
  Rational leading() const;

  bool is_monic() const;
  bool has_integer_coeffs() const;

  PolyQ operator-() const;
  friend PolyQ operator+(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator-(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator*(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator*(const Rational& c, const PolyQ& a);
  friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const PolyQ& a, const PolyQ& b) { return !(a == b); }

  /// Quotient and remainder; b must be nonzero.
  std::pair<PolyQ, PolyQ> divrem(const PolyQ& b) const;
  PolyQ derivative() const;
  PolyQ monic() const;
  Rational eval(const Rational& x) const;

  /// Rational c with this / c primitive in Z[x] with positive leading
  /// coefficient; c carries the sign of the leading coefficient.
  Rational content() const;
  /// this / content(): primitive integer polynomial with positive leading
  /// coefficient.
  std::vector<Integer> primitive_part() const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void normalize();
  std::vector<Rational> coeffs_;
};

PolyQ gcd(const PolyQ& a, const PolyQ& b);
PolyQ pow(const PolyQ& a, unsigned n);

/// Lexicographic order on coefficient lists (lowest degree first), used as
/// the canonical order of factors. Degree is compared first.
bool canonical_less(const PolyQ& a, const PolyQ& b);

/// Resultant of a and b computed over Q.
Rational resultant(const PolyQ& a, const PolyQ& b);
Rational discriminant(const PolyQ& f);

/// Number of distinct real roots of f in the half-open interval (lo, hi],
/// by Sturm's theorem. f must be nonzero.
int count_real_roots(const PolyQ& f, const Rational& lo, const Rational& hi);

/// Polynomial over Z/p with p prime, coefficients in [0, p), lowest first.
class FpPoly {
 public:
  FpPoly() = default;
  FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs);

  std::uint64_t modulus() const { return p_; }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  /// Coefficient as a representative in (-p/2, p/2].
  long long symmetric(std::size_t i) const;

  friend bool operator==(const FpPoly& a, const FpPoly& b) {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }
  friend bool operator!=(const FpPoly& a, const FpPoly& b) { return !(a == b); }
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);

  std::string to_string(const std::string& var = "x") const;

 private:
  std::uint64_t p_ = 2;
  std::vector<std::uint64_t> c_;
};

/// Canonical order for factors mod p: degree, then coefficients lowest
/// first compared as symmetric representatives.
bool canonical_less(const FpPoly& a, const FpPoly& b);

/// Reduction of a polynomial with p-integral coefficients modulo p.
FpPoly reduce_mod(const PolyQ& f, std::uint64_t p);

std::string format_poly(const std::vector<std::string>& coeff_strings, const std::string& var);

}  // namespace eiscong::exact
