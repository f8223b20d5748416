#include "eiscong/exactmath/poly.hpp"

#include <algorithm>
#include <sstream>

#include "eiscong/error.hpp"

namespace eiscong::exact {

PolyQ::PolyQ(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  normalize();
}

PolyQ::PolyQ(std::initializer_list<long> coeffs) {
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

PolyQ PolyQ::constant(const Rational& c) { return PolyQ(std::vector<Rational>{c}); }

PolyQ PolyQ::x() { return PolyQ{0, 1}; }

PolyQ PolyQ::from_integers(const std::vector<Integer>& coeffs) {
  std::vector<Rational> r;
  r.reserve(coeffs.size());
  for (auto& c : coeffs) r.emplace_back(c);
  return PolyQ(std::move(r));
}

void PolyQ::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational PolyQ::coeff(long i) const {
  if (i < 0 || i >= static_cast<long>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

Rational PolyQ::leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

bool PolyQ::is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

bool PolyQ::has_integer_coeffs() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Rational& c) { return c.get_den() == 1; });
}

PolyQ PolyQ::operator-() const {
  PolyQ r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

PolyQ operator+(const PolyQ& a, const PolyQ& b) {
  std::vector<Rational> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] += b.coeffs_[i];
  return PolyQ(std::move(r));
}

PolyQ operator-(const PolyQ& a, const PolyQ& b) { return a + (-b); }

PolyQ operator*(const PolyQ& a, const PolyQ& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return PolyQ(std::move(r));
}

PolyQ operator*(const Rational& c, const PolyQ& a) {
  std::vector<Rational> r = a.coeffs_;
  for (auto& x : r) x *= c;
  return PolyQ(std::move(r));
}

std::pair<PolyQ, PolyQ> PolyQ::divrem(const PolyQ& b) const {
  if (b.is_zero()) throw ComputationError("polynomial division by zero");
  if (degree() < b.degree()) return {PolyQ(), *this};
  std::vector<Rational> r = coeffs_;
  std::vector<Rational> q(coeffs_.size() - b.coeffs_.size() + 1);
  const Rational lead = b.leading();
  for (long i = degree() - b.degree(); i >= 0; --i) {
    Rational c = r[static_cast<std::size_t>(i + b.degree())] / lead;
    q[static_cast<std::size_t>(i)] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[static_cast<std::size_t>(i) + j] -= c * b.coeffs_[j];
  }
  return {PolyQ(std::move(q)), PolyQ(std::move(r))};
}

PolyQ PolyQ::derivative() const {
  std::vector<Rational> r;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) r.push_back(coeffs_[i] * static_cast<long>(i));
  return PolyQ(std::move(r));
}

PolyQ PolyQ::monic() const {
  if (is_zero()) return *this;
  return Rational(1) / leading() * *this;
}

Rational PolyQ::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational PolyQ::content() const {
  require(!is_zero(), "content of the zero polynomial");
  Integer num = 0, den = 1;
  for (auto& c : coeffs_) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational r = make_rational(num, den);
  if (leading() < 0) r = -r;
  return r;
}

std::vector<Integer> PolyQ::primitive_part() const {
  const Rational c = content();
  std::vector<Integer> out;
  for (auto& x : coeffs_) {
    Rational y = x / c;
    out.push_back(y.get_num());
  }
  return out;
}

std::string format_poly(const std::vector<std::string>& coeff_strings, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (long i = static_cast<long>(coeff_strings.size()) - 1; i >= 0; --i) {
    std::string c = coeff_strings[static_cast<std::size_t>(i)];
    if (c == "0") continue;
    bool negative = !c.empty() && c[0] == '-';
    std::string mag = negative ? c.substr(1) : c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    if (i == 0) {
      os << mag;
    } else {
      if (mag != "1") os << mag << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) return "0";
  return os.str();
}

std::string PolyQ::to_string(const std::string& var) const {
  std::vector<std::string> cs;
  for (auto& c : coeffs_) cs.push_back(c.get_str());
  return format_poly(cs, var);
}

PolyQ gcd(const PolyQ& a, const PolyQ& b) {
  PolyQ x = a, y = b;
  while (!y.is_zero()) {
    PolyQ r = x.divrem(y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

PolyQ pow(const PolyQ& a, unsigned n) {
  PolyQ r = PolyQ::constant(1);
  for (unsigned i = 0; i < n; ++i) r = r * a;
  return r;
}

bool canonical_less(const PolyQ& a, const PolyQ& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(),
                                      b.coeffs().end());
}

Rational resultant(const PolyQ& a, const PolyQ& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  if (b.degree() == 0) {
    Rational r = 1;
    for (long i = 0; i < a.degree(); ++i) r *= b.leading();
    return r;
  }
  const long m = a.degree(), n = b.degree();
  if (m < n) {
    Rational r = resultant(b, a);
    return ((m * n) % 2 == 0) ? r : Rational(-r);
  }
  PolyQ r = a.divrem(b).second;
  if (r.is_zero()) return 0;
  Rational factor = 1;
  for (long i = 0; i < m - r.degree(); ++i) factor *= b.leading();
  if ((m * n) % 2 != 0) factor = -factor;
  return factor * resultant(b, r);
}

Rational discriminant(const PolyQ& f) {
  require(f.degree() >= 1, "discriminant needs positive degree");
  const long n = f.degree();
  Rational d = resultant(f, f.derivative()) / f.leading();
  if (((n * (n - 1)) / 2) % 2 != 0) d = -d;
  return d;
}

namespace {

int sign_changes(const std::vector<PolyQ>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (auto& g : chain) {
    const int s = sgn(g.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

int count_real_roots(const PolyQ& f, const Rational& lo, const Rational& hi) {
  require(!f.is_zero(), "root count of the zero polynomial");
  if (f.degree() == 0 || lo >= hi) return 0;
  // Distinct roots only: work with the squarefree part.
  PolyQ g = f.divrem(gcd(f, f.derivative())).first;
  std::vector<PolyQ> chain{g, g.derivative()};
  while (chain.back().degree() > 0) {
    PolyQ r = chain[chain.size() - 2].divrem(chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return sign_changes(chain, lo) - sign_changes(chain, hi);
}

FpPoly::FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& c : c_) c %= p_;
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

long long FpPoly::symmetric(std::size_t i) const {
  const std::uint64_t c = i < c_.size() ? c_[i] : 0;
  if (c > p_ / 2) return -static_cast<long long>(p_ - c);
  return static_cast<long long>(c);
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  require(a.p_ == b.p_, "mismatched moduli");
  if (a.c_.empty() || b.c_.empty()) return FpPoly(a.p_, {});
  std::vector<std::uint64_t> r(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      r[i + j] = (r[i + j] + mulmod(a.c_[i], b.c_[j], a.p_)) % a.p_;
  return FpPoly(a.p_, std::move(r));
}

std::string FpPoly::to_string(const std::string& var) const {
  std::vector<std::string> cs;
  for (std::size_t i = 0; i < c_.size(); ++i) cs.push_back(std::to_string(symmetric(i)));
  return format_poly(cs, var);
}

bool canonical_less(const FpPoly& a, const FpPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.symmetric(i) != b.symmetric(i)) return a.symmetric(i) < b.symmetric(i);
  }
  return false;
}

FpPoly reduce_mod(const PolyQ& f, std::uint64_t p) {
  std::vector<std::uint64_t> c;
  for (auto& x : f.coeffs()) c.push_back(mod_u64(x, p));
  return FpPoly(p, std::move(c));
}

}  // namespace eiscong::exact
