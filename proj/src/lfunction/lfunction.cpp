#include "eiscong/lfunction/lfunction.hpp"

#include <algorithm>
#include <cmath>

#include "eiscong/error.hpp"
#include "eiscong/exactmath/bernoulli.hpp"
#include "eiscong/exactmath/matrix.hpp"

namespace eiscong::lf {

namespace {

// Extra working digits carried beyond the requested accuracy.
constexpr int kGuardDigits = 40;
// Second splitting point of the Mellin integral, used for the residual.
constexpr long kAltSplitNum = 6, kAltSplitDen = 5;
constexpr std::uint64_t kRhoBudget = 20000000;

BigFloat eval_poly(const exact::PolyQ& f, const BigFloat& x) {
  BigFloat acc(x.precision());
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    acc *= x;
    acc += BigFloat(f.coeffs()[i], x.precision());
  }
  return acc;
}

void isolate(const exact::PolyQ& f, const Rational& lo, const Rational& hi, std::vector<std::pair<Rational, Rational>>& out) {
  const int n = exact::count_real_roots(f, lo, hi);
  if (n == 0) return;
  if (n == 1) {
    out.emplace_back(lo, hi);
    return;
  }
  Rational mid = (lo + hi) / 2;
  isolate(f, lo, mid, out);
  isolate(f, mid, hi, out);
}

}  // namespace

BigFloat incomplete_gamma(const BigFloat& s, const BigFloat& x) {
  require(s.sign() > 0 && x.sign() > 0, "incomplete gamma needs s > 0 and x > 0");
  const mpfr_prec_t bits = std::max(s.precision(), x.precision());
  const BigFloat eps = pow(BigFloat(2, bits), -static_cast<long>(bits));
  const BigFloat one(1, bits);
  const BigFloat prefactor = exp(s * log(x) - x);
  if (x < s + BigFloat(2, bits)) {
    // gamma(s, x) = x^s e^-x sum x^n / (s (s+1) ... (s+n))
    BigFloat term = one / s, sum = term, denom = s;
    for (int n = 1; n < 1000000; ++n) {
      denom += one;
      term *= x / denom;
      sum += term;
      if (abs(term) <= abs(sum) * eps) break;
    }
    return gamma(s) - prefactor * sum;
  }
  // Modified Lentz for Gamma(s, x) = e^-x x^s / (x + 1 - s - 1(1-s)/(x + 3 - s - ...)).
  const BigFloat tiny = pow(BigFloat(2, bits), -4 * static_cast<long>(bits));
  BigFloat b = x + one - s;
  BigFloat c = one / tiny, d = one / b, h = d;
  for (long i = 1; i < 10000000; ++i) {
    const BigFloat ib(i, bits);
    const BigFloat an = -(ib * (ib - s));
    b += BigFloat(2, bits);
    d = an * d + b;
    if (abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (abs(c) < tiny) c = tiny;
    d = one / d;
    const BigFloat delta = d * c;
    h *= delta;
    if (abs(delta - one) <= eps) break;
  }
  return prefactor * h;
}

std::vector<BigFloat> real_roots(const exact::PolyQ& f, mpfr_prec_t bits) {
  require(f.degree() >= 1, "polynomial must be non-constant");
  require(exact::gcd(f, f.derivative()).degree() == 0, "polynomial must be squarefree");
  Rational bound = 0;
  for (const auto& c : f.coeffs()) bound = std::max(bound, Rational(abs(c / f.leading())));
  bound += 1;
  std::vector<std::pair<Rational, Rational>> intervals;
  isolate(f, -bound, bound, intervals);

  std::vector<BigFloat> roots;
  const mpfr_prec_t work = bits + 64;
  for (auto& [lo, hi] : intervals) {
    if (f.eval(hi) == 0) {
      roots.emplace_back(hi, bits);
      continue;
    }
    // One simple root in (a, b]; sign(f) equals sign(f(b)) to its right.
    BigFloat a(lo, work), b(hi, work);
    const int sb = eval_poly(f, b).sign();
    const BigFloat tol = pow(BigFloat(2, work), -static_cast<long>(bits) - 8);
    const BigFloat scale = BigFloat(1, work) + abs(b);
    for (int it = 0; it < 100000 && b - a > tol * scale; ++it) {
      BigFloat mid = (a + b) / BigFloat(2, work);
      const int sm = eval_poly(f, mid).sign();
      if (sm == 0) {
        a = mid;
        b = mid;
        break;
      }
      if (sm == sb) {
        b = mid;
      } else {
        a = mid;
      }
    }
    BigFloat r = b;
    mpfr_prec_round(r.get(), bits, MPFR_RNDN);
    roots.push_back(r);
  }
  return roots;
}

std::vector<BigFloat> embeddings(const nf::NumberField& field, mpfr_prec_t bits) {
  auto roots = real_roots(field.minpoly(), bits);
  if (static_cast<int>(roots.size()) != field.degree()) {
    throw ComputationError("coefficient field is not totally real");
  }
  return roots;
}

BigFloat embed(const NFElement& a, const BigFloat& root) {
  BigFloat acc(root.precision());
  const auto& c = a.coords();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc *= root;
    acc += BigFloat(c[i], root.precision());
  }
  return acc;
}

std::size_t series_cutoff(int weight, std::uint64_t level, int digits) {
  require(digits > 0, "digits must be positive");
  const double a = std::sqrt(static_cast<double>(level)) / (2 * M_PI);
  const double t_min = static_cast<double>(kAltSplitDen) / static_cast<double>(kAltSplitNum);
  const double target = (digits + 20 + weight / 2.0) * std::log(10.0);
  auto base = static_cast<std::size_t>(std::ceil(digits * std::log(10.0) * a / t_min)) + 50;
  // Tail terms behave like n^{(k+1)/2} e^{-n t / A}; extend until that is
  // far below the target accuracy.
  std::size_t n = 1;
  while (true) {
    const double x = static_cast<double>(n) * t_min / a;
    const double logterm = -x + (weight + 1) / 2.0 * std::log(static_cast<double>(n)) + weight * std::log(1 / t_min) +
                           std::fabs(std::log(a));
    if (-logterm >= target) break;
    ++n;
  }
  return std::max(base, n);
}

std::vector<NFElement> dirichlet_coefficients(const EigenSystem& sys, std::size_t n_max) {
  if (sys.expansion.size() > n_max) {
    return {sys.expansion.begin(), sys.expansion.begin() + static_cast<long>(n_max) + 1};
  }
  const auto& K = sys.field;
  const NFElement zero = NFElement::from_rational(K, 0);
  std::vector<NFElement> a(n_max + 1, zero);
  if (n_max >= 1) a[1] = NFElement::from_rational(K, 1);
  std::vector<std::uint64_t> spf(n_max + 1, 0);
  for (std::uint64_t i = 2; i <= n_max; ++i) {
    if (spf[i] != 0) continue;
    for (std::uint64_t j = i; j <= n_max; j += i) {
      if (spf[j] == 0) spf[j] = i;
    }
    if (!sys.has(i)) {
      throw PreconditionError("insufficient coefficients: need a_q for every prime q <= n_max = " +
                              std::to_string(n_max) + " (missing q = " + std::to_string(i) + ")");
    }
  }
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    const std::uint64_t q = spf[n];
    std::uint64_t m = n, qr = 1;
    while (m % q == 0) {
      m /= q;
      qr *= q;
    }
    if (m != 1) {
      a[n] = a[qr] * a[m];
      continue;
    }
    const NFElement& aq = sys.at(q);
    if (qr == q) {
      a[n] = aq;
    } else if (sys.level % q == 0) {
      a[n] = aq * a[qr / q];
    } else {
      const Integer qk = exact::ipow(Integer(static_cast<unsigned long>(q)), static_cast<unsigned long>(sys.weight - 1));
      a[n] = aq * a[qr / q] - NFElement::from_rational(K, Rational(qk)) * a[qr / q / q];
    }
  }
  return a;
}

int atkin_lehner_sign(const EigenSystem& sys) {
  require(sys.level > 1 && exact::is_prime(static_cast<std::uint64_t>(sys.level)), "level must be prime");
  const auto p = static_cast<std::uint64_t>(sys.level);
  const NFElement& ap = sys.at(p);
  const Integer unit = exact::ipow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned long>(sys.weight / 2 - 1));
  if (ap.is_rational()) {
    const Rational v = ap.to_rational();
    if (v == Rational(-unit)) return 1;
    if (v == Rational(unit)) return -1;
  }
  throw PreconditionError("not a prime-level newform datum");
}

int functional_equation_sign(const EigenSystem& sys) {
  const int base = (sys.weight / 2) % 2 == 0 ? 1 : -1;
  if (sys.level == 1) return base;
  return base * atkin_lehner_sign(sys);
}

namespace {

struct SeriesTerms {
  std::vector<BigFloat> direct;     // (A/n)^s Gamma(s, n t / A)
  std::vector<BigFloat> reflected;  // (A/n)^{k-s} Gamma(k-s, n / (t A))
};

SeriesTerms series_terms(int k, std::uint64_t level, int s, const BigFloat& t, std::size_t n_max,
                         const std::vector<bool>& needed, mpfr_prec_t bits) {
  const BigFloat A = sqrt(BigFloat(static_cast<long>(level), bits)) / (BigFloat(2, bits) * BigFloat::pi(bits));
  const BigFloat sv(static_cast<long>(s), bits), rv(static_cast<long>(k - s), bits);
  SeriesTerms out;
  out.direct.assign(n_max + 1, BigFloat(bits));
  out.reflected.assign(n_max + 1, BigFloat(bits));
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (!needed[n]) continue;
    const BigFloat nv(static_cast<long>(n), bits);
    const BigFloat ratio = A / nv;
    out.direct[n] = pow(ratio, s) * incomplete_gamma(sv, nv * t / A);
    out.reflected[n] = pow(ratio, k - s) * incomplete_gamma(rv, nv / (t * A));
  }
  return out;
}

struct Evaluation {
  std::vector<BigFloat> values;  // one per embedding
  std::vector<BigFloat> scales;
  std::size_t terms = 0;
};

// Lambda(s) for every real embedding, Mellin integral split at t.
Evaluation evaluate_all(const EigenSystem& sys, int s, int digits, const BigFloat& t) {
  const int k = sys.weight;
  require(s >= 1 && s <= k - 1, "s must be a critical integer 1 <= s <= k-1");
  const mpfr_prec_t bits = bits_for_digits(digits + kGuardDigits);
  const std::size_t n_max = series_cutoff(k, static_cast<std::uint64_t>(sys.level), digits);
  const auto coeffs = dirichlet_coefficients(sys, n_max);
  const int eps = functional_equation_sign(sys);
  std::vector<bool> needed(n_max + 1, false);
  for (std::size_t n = 1; n <= n_max; ++n) needed[n] = !coeffs[n].is_zero();
  const BigFloat tt(t);
  auto terms = series_terms(k, static_cast<std::uint64_t>(sys.level), s, tt, n_max, needed, bits);
  const auto roots = embeddings(*sys.field, bits);
  Evaluation ev;
  ev.terms = n_max;
  const BigFloat sign(static_cast<long>(eps), bits);
  for (const auto& root : roots) {
    BigFloat total(bits), scale(bits);
    for (std::size_t n = 1; n <= n_max; ++n) {
      if (!needed[n]) continue;
      const BigFloat an = embed(coeffs[n], root);
      const BigFloat t1 = an * terms.direct[n];
      const BigFloat t2 = sign * an * terms.reflected[n];
      total += t1 + t2;
      scale += abs(t1) + abs(t2);
    }
    ev.values.push_back(total);
    ev.scales.push_back(scale);
  }
  return ev;
}

BigFloat split_point(int digits, bool alternate) {
  const mpfr_prec_t bits = bits_for_digits(digits + kGuardDigits);
  if (!alternate) return BigFloat(1, bits);
  return BigFloat(kAltSplitNum, bits) / BigFloat(kAltSplitDen, bits);
}

bool numerically_zero(const BigFloat& v, const BigFloat& scale, int digits) {
  return abs(v) <= scale * power_of_ten(-digits / 2, v.precision());
}

}  // namespace

CompletedLValue lambda_value(const EigenSystem& sys, int s, int digits, std::size_t embedding) {
  require(embedding < static_cast<std::size_t>(sys.field->degree()), "embedding index out of range");
  auto ev = evaluate_all(sys, s, digits, split_point(digits, false));
  CompletedLValue out;
  out.weight = sys.weight;
  out.level = static_cast<std::uint64_t>(sys.level);
  out.s = s;
  out.value = ev.values[embedding];
  out.scale = ev.scales[embedding];
  out.sign = functional_equation_sign(sys);
  out.digits = digits;
  out.embedding = embedding;
  out.terms = ev.terms;
  return out;
}

BigFloat functional_equation_residual(const EigenSystem& sys, int s, int digits, std::size_t embedding) {
  require(embedding < static_cast<std::size_t>(sys.field->degree()), "embedding index out of range");
  auto direct = evaluate_all(sys, s, digits, split_point(digits, false));
  auto reflected = evaluate_all(sys, sys.weight - s, digits, split_point(digits, true));
  const BigFloat sign(static_cast<long>(functional_equation_sign(sys)), direct.values[embedding].precision());
  const BigFloat diff = abs(direct.values[embedding] - sign * reflected.values[embedding]);
  BigFloat denom = abs(direct.values[embedding]);
  const BigFloat floor_scale = direct.scales[embedding] * power_of_ten(-digits / 2, denom.precision());
  if (denom < floor_scale) denom = floor_scale;
  return diff / denom;
}

EigenSystem with_inferred_atkin_lehner(const EigenSystem& sys, int digits) {
  require(sys.level > 1 && exact::is_prime(static_cast<std::uint64_t>(sys.level)), "level must be prime");
  const auto p = static_cast<std::uint64_t>(sys.level);
  if (sys.has(p)) {
    atkin_lehner_sign(sys);
    return sys;
  }
  const int d = std::min(digits, 30);
  const Integer unit = exact::ipow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned long>(sys.weight / 2 - 1));
  std::vector<std::pair<BigFloat, EigenSystem>> trials;
  for (int w : {1, -1}) {
    EigenSystem trial = sys;
    trial.expansion.clear();
    trial.values[p] = NFElement::from_rational(sys.field, Rational(-w * unit));
    BigFloat worst(bits_for_digits(d));
    for (std::size_t e = 0; e < static_cast<std::size_t>(sys.field->degree()); ++e) {
      const BigFloat r = functional_equation_residual(trial, sys.weight - 1, d, e);
      if (r > worst) worst = r;
    }
    trials.emplace_back(worst, std::move(trial));
  }
  const BigFloat good = power_of_ten(-d / 2, bits_for_digits(d));
  const bool first = trials[0].first < good, second = trials[1].first < good;
  if (first == second) throw ComputationError("could not determine the Atkin-Lehner sign");
  return first ? trials[0].second : trials[1].second;
}

std::optional<Rational> rationalize(const BigFloat& x, const Integer& max_den, const BigFloat& tol) {
  const Rational exact = x.to_rational();
  const Rational bound = tol.to_rational();
  // Convergents h/k of the exact binary value.
  Integer h_prev = 1, h = 0, k_prev = 0, k = 1;
  Rational rest = exact;
  for (int it = 0; it < 100000; ++it) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    Integer h_next = a * h_prev + h, k_next = a * k_prev + k;
    // h_prev/k_prev holds the latest convergent after the shift below.
    h = h_prev;
    k = k_prev;
    h_prev = h_next;
    k_prev = k_next;
    if (k_prev > max_den) return std::nullopt;
    const Rational approx = exact::make_rational(h_prev, k_prev);
    if (abs(exact - approx) <= bound) return approx;
    Rational frac = rest - Rational(a);
    if (frac == 0) return std::nullopt;
    rest = 1 / frac;
  }
  return std::nullopt;
}

namespace {

// Reconstructs Lambda(m)/Lambda(m') in K from all embeddings at one
// precision, via the rational traces Tr(ratio * theta^i).
std::optional<NFElement> reconstruct(const EigenSystem& sys, int m, int m_other, int digits, BigFloat& residual) {
  const auto num = evaluate_all(sys, m, digits, split_point(digits, false));
  const auto den = evaluate_all(sys, m_other, digits, split_point(digits, false));
  const std::size_t d = static_cast<std::size_t>(sys.field->degree());
  const mpfr_prec_t bits = bits_for_digits(digits + kGuardDigits);
  const auto roots = embeddings(*sys.field, bits);
  std::vector<BigFloat> ratios;
  for (std::size_t j = 0; j < d; ++j) {
    if (numerically_zero(den.values[j], den.scales[j], digits)) {
      throw ComputationError("critical value at s = " + std::to_string(m_other) + " is numerically zero");
    }
    ratios.push_back(num.values[j] / den.values[j]);
  }
  Integer max_den;
  mpz_ui_pow_ui(max_den.get_mpz_t(), 10, static_cast<unsigned long>(digits / 3));
  std::vector<Rational> traces(d);
  for (std::size_t i = 0; i < d; ++i) {
    BigFloat sum(bits), mag(bits);
    for (std::size_t j = 0; j < d; ++j) {
      const BigFloat term = ratios[j] * pow(roots[j], static_cast<long>(i));
      sum += term;
      mag += abs(term);
    }
    const BigFloat tol = (mag + BigFloat(1, bits)) * power_of_ten(-(digits - 10), bits);
    auto q = rationalize(sum, max_den, tol);
    if (!q) return std::nullopt;
    traces[i] = *q;
  }
  const NFElement theta = NFElement::generator(sys.field);
  exact::Matrix<Rational> gram(d, std::vector<Rational>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t l = 0; l < d; ++l) gram[i][l] = theta.pow(static_cast<unsigned long>(i + l)).trace();
  NFElement ratio(sys.field, exact::solve(gram, traces));
  residual = BigFloat(bits);
  for (std::size_t j = 0; j < d; ++j) {
    BigFloat r = abs(embed(ratio, roots[j]) - ratios[j]);
    if (!ratios[j].is_zero()) r /= abs(ratios[j]);
    if (r > residual) residual = r;
  }
  return ratio;
}

}  // namespace

RatioReport ratio_rationalize(const EigenSystem& sys, int m, int m_other, int digits) {
  const int k = sys.weight;
  require(m >= 1 && m <= k - 1 && m_other >= 1 && m_other <= k - 1, "both arguments must be critical");
  require((m - m_other) % 2 == 0, "critical values of mixed parity");
  RatioReport out;
  out.m = m;
  out.m_other = m_other;
  out.digits = digits;
  if (m == m_other) {
    out.ratio = NFElement::from_rational(sys.field, 1);
    out.residual = BigFloat(bits_for_digits(digits));
    out.stable = true;
    return out;
  }
  BigFloat res1, res2;
  auto low = reconstruct(sys, m, m_other, digits, res1);
  auto high = reconstruct(sys, m, m_other, 2 * digits, res2);
  if (!low && !high) throw ComputationError("increase precision");
  out.stable = low && high && *low == *high;
  out.ratio = low ? *low : *high;
  out.residual = low ? res1 : res2;
  return out;
}

CandidateReport candidate_congruence_primes(const EigenSystem& sys, int j, int k, int digits, std::optional<int> reference) {
  const int kp = sys.weight;
  require(j >= 0 && j % 2 == 0, "j must be even and non-negative");
  require(j + 2 * k - 2 == kp, "weight mismatch: j + 2k - 2 must equal the form's weight");
  const int s = j + k;
  require(s >= 1 && s <= kp - 1, "j + k must be critical");
  CandidateReport out;
  if (reference) {
    require(*reference >= 1 && *reference <= kp - 1, "reference must be critical");
    require((*reference - s) % 2 == 0, "reference must have the parity of j + k");
    auto ev = evaluate_all(sys, *reference, digits, split_point(digits, false));
    for (std::size_t e = 0; e < ev.values.size(); ++e) {
      if (numerically_zero(ev.values[e], ev.scales[e], digits)) throw ComputationError("choose different m0");
    }
    out.reference = *reference;
  } else {
    for (int m = (s % 2 == 0) ? 2 : 1; m <= kp - 1; m += 2) {
      if (m == s) continue;
      auto ev = evaluate_all(sys, m, digits, split_point(digits, false));
      bool zero = false;
      for (std::size_t e = 0; e < ev.values.size(); ++e) zero = zero || numerically_zero(ev.values[e], ev.scales[e], digits);
      if (!zero) {
        out.reference = m;
        break;
      }
    }
    if (out.reference == 0) throw ComputationError("choose different m0");
  }
  out.ratio = ratio_rationalize(sys, s, out.reference, digits);
  if (out.ratio.ratio.is_zero()) throw ComputationError("critical value at s = " + std::to_string(s) + " vanishes");
  const Rational norm = out.ratio.ratio.norm();
  const Integer num = abs(norm.get_num());
  if (num > 1) {
    auto pf = exact::factor_integer_bounded(num, kRhoBudget);
    out.unfactored = pf.cofactor;
    for (auto& [ell, e] : pf.factors) {
      if (ell <= kp || ell == sys.level) continue;
      out.primes.push_back({ell, kCandidateFlag});
    }
  }
  return out;
}

PrimeScan zeta_sigma_primes(unsigned k, const std::vector<Integer>& sigma) {
  require(k >= 4 && k % 2 == 0, "k must be even and at least 4");
  for (const auto& p : sigma) require(p > 1 && exact::is_prime(p), "Sigma must consist of primes");
  const Rational q = exact::zeta_quantity(k, sigma);
  PrimeScan out;
  const Integer num = abs(q.get_num());
  if (num <= 1) return out;
  auto pf = exact::factor_integer_bounded(num, kRhoBudget);
  out.unfactored = pf.cofactor;
  for (auto& [ell, e] : pf.factors) {
    if (ell > 3) out.primes.push_back(ell);
  }
  return out;
}

Integer local_euler_quantity(const Integer& a_p, std::uint64_t p, int j, int k) {
  require(j >= 0 && k >= 1, "j and k must be non-negative");
  const Integer P(static_cast<unsigned long>(p));
  const auto s = static_cast<unsigned long>(j + k);
  return exact::ipow(P, 2 * s) - a_p * exact::ipow(P, s) + exact::ipow(P, static_cast<unsigned long>(j + 2 * k - 3));
}

bool local_euler_divisor(const EigenSystem& sys, int j, int k, std::uint64_t ell, std::uint64_t p) {
  require(exact::is_prime(ell), "ell must be prime");
  require(ell != p, "ell must differ from p");
  require(j >= 0 && k >= 1, "j and k must be non-negative");
  const auto& K = sys.field;
  const Integer P(static_cast<unsigned long>(p));
  const auto s = static_cast<unsigned long>(j + k);
  const NFElement q = NFElement::from_rational(K, Rational(exact::ipow(P, 2 * s))) -
                      sys.at(p) * NFElement::from_rational(K, Rational(exact::ipow(P, s))) +
                      NFElement::from_rational(K, Rational(exact::ipow(P, static_cast<unsigned long>(sys.weight - 1))));
  // Some prime above ell divides q exactly when ell divides its norm.
  const Rational n = q.norm();
  if (n == 0) return true;
  return exact::ord_at(n, Integer(static_cast<unsigned long>(ell))) > 0;
}

}  // namespace eiscong::lf
