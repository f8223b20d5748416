#include "eiscong/lfunction/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "eiscong/error.hpp"

namespace eiscong::lf {

mpfr_prec_t bits_for_digits(int digits) {
  require(digits > 0, "digits must be positive");
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 16;
}

BigFloat::BigFloat() : BigFloat(64) {}

BigFloat::BigFloat(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long v, mpfr_prec_t bits) : BigFloat(bits) { mpfr_set_si(v_, v, MPFR_RNDN); }

BigFloat::BigFloat(const Integer& v, mpfr_prec_t bits) : BigFloat(bits) {
  mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& v, mpfr_prec_t bits) : BigFloat(bits) {
  mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::pi(mpfr_prec_t bits) {
  BigFloat r(bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::parse(const std::string& text, mpfr_prec_t bits) {
  BigFloat r(bits);
  if (text.empty() || mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0) {
    throw PreconditionError("malformed decimal number: " + text);
  }
  return r;
}

std::string BigFloat::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return sign() > 0 ? "inf" : "-inf";
  if (is_zero()) return "0";
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(std::max(digits, 2)), v_, MPFR_RNDN);
  std::string m(raw);
  mpfr_free_str(raw);
  std::string out;
  if (m[0] == '-') {
    out = "-";
    m.erase(0, 1);
  }
  out += m.substr(0, 1) + "." + m.substr(1) + "e" + std::to_string(static_cast<long>(e) - 1);
  return out;
}

Rational BigFloat::to_rational() const {
  require(mpfr_number_p(v_) != 0, "not a finite number");
  if (is_zero()) return Rational(0);
  Integer m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
  Rational r(m);
  if (e >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  r.canonicalize();
  return r;
}

long BigFloat::decimal_exponent() const {
  if (is_zero()) return -1000000000L;
  BigFloat a = abs(*this);
  mpfr_log10(a.v_, a.v_, MPFR_RNDN);
  mpfr_floor(a.v_, a.v_);
  return mpfr_get_si(a.v_, MPFR_RNDN);
}

BigFloat BigFloat::operator-() const {
  BigFloat r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

namespace {

// Widens a to the larger precision before an in-place operation.
void widen(mpfr_t a, mpfr_srcptr b) {
  if (mpfr_get_prec(b) > mpfr_get_prec(a)) mpfr_prec_round(a, mpfr_get_prec(b), MPFR_RNDN);
}

}  // namespace

BigFloat& BigFloat::operator+=(const BigFloat& b) {
  widen(v_, b.v_);
  mpfr_add(v_, v_, b.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& b) {
  widen(v_, b.v_);
  mpfr_sub(v_, v_, b.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& b) {
  widen(v_, b.v_);
  mpfr_mul(v_, v_, b.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& b) {
  if (b.is_zero()) throw ComputationError("division by zero");
  widen(v_, b.v_);
  mpfr_div(v_, v_, b.v_, MPFR_RNDN);
  return *this;
}

BigFloat abs(const BigFloat& x) {
  BigFloat r(x);
  mpfr_abs(r.get(), r.get(), MPFR_RNDN);
  return r;
}

BigFloat sqrt(const BigFloat& x) {
  require(x.sign() >= 0, "square root of a negative number");
  BigFloat r(x);
  mpfr_sqrt(r.get(), r.get(), MPFR_RNDN);
  return r;
}

BigFloat exp(const BigFloat& x) {
  BigFloat r(x);
  mpfr_exp(r.get(), r.get(), MPFR_RNDN);
  return r;
}

BigFloat log(const BigFloat& x) {
  require(x.sign() > 0, "logarithm of a non-positive number");
  BigFloat r(x);
  mpfr_log(r.get(), r.get(), MPFR_RNDN);
  return r;
}

BigFloat pow(const BigFloat& x, const BigFloat& y) {
  BigFloat r(std::max(x.precision(), y.precision()));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

BigFloat pow(const BigFloat& x, long n) {
  BigFloat r(x.precision());
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

BigFloat gamma(const BigFloat& x) {
  BigFloat r(x);
  mpfr_gamma(r.get(), r.get(), MPFR_RNDN);
  return r;
}

BigFloat floor(const BigFloat& x) {
  BigFloat r(x);
  mpfr_floor(r.get(), r.get());
  return r;
}

BigFloat power_of_ten(long e, mpfr_prec_t bits) {
  BigFloat r(10, bits);
  return pow(r, e);
}

}  // namespace eiscong::lf
