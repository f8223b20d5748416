#pragma once

#include <mpfr.h>

#include <string>

#include "eiscong/exactmath/integer.hpp"

namespace eiscong::lf {

using exact::Integer;
using exact::Rational;

/// Bits needed for the given number of decimal digits, plus a few guard bits.
mpfr_prec_t bits_for_digits(int digits);

/// Owning MPFR value. Every object carries its own precision, so separate
/// threads never share rounding state. Binary operations round to the larger
/// operand precision.
class BigFloat {
 public:
  BigFloat();
  explicit BigFloat(mpfr_prec_t bits);
  BigFloat(long v, mpfr_prec_t bits);
  BigFloat(const Integer& v, mpfr_prec_t bits);
  BigFloat(const Rational& v, mpfr_prec_t bits);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  static BigFloat pi(mpfr_prec_t bits);
  /// Parses a decimal string; throws PreconditionError on bad input.
  static BigFloat parse(const std::string& text, mpfr_prec_t bits);

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Scientific notation with the given number of significant digits.
  std::string to_string(int digits) const;
  /// Exact binary value as a rational.
  Rational to_rational() const;
  /// Base-10 exponent e with 10^e <= |x| < 10^(e+1); very negative for 0.
  long decimal_exponent() const;

  BigFloat operator-() const;
  BigFloat& operator+=(const BigFloat& b);
  BigFloat& operator-=(const BigFloat& b);
  BigFloat& operator*=(const BigFloat& b);
  BigFloat& operator/=(const BigFloat& b);
  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

 private:
  mpfr_t v_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat pow(const BigFloat& x, const BigFloat& y);
BigFloat pow(const BigFloat& x, long n);
BigFloat gamma(const BigFloat& x);
BigFloat floor(const BigFloat& x);
/// 10^e at the given precision.
BigFloat power_of_ten(long e, mpfr_prec_t bits);

}  // namespace eiscong::lf
