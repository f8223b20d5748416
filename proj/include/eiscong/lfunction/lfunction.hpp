#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eiscong/lfunction/bigfloat.hpp"
#include "eiscong/modforms/modforms.hpp"

namespace eiscong::lf {

using mf::EigenSystem;
using nf::NFElement;

/// Upper incomplete gamma Gamma(s, x) for s > 0, x > 0: power series below
/// x = s + 2, Lentz continued fraction above.
BigFloat incomplete_gamma(const BigFloat& s, const BigFloat& x);

/// Real roots of a squarefree polynomial, ascending, at the given precision.
std::vector<BigFloat> real_roots(const exact::PolyQ& f, mpfr_prec_t bits);

/// Real embeddings of the coefficient field, one per root of the minimal
/// polynomial in ascending order. Throws ComputationError if a root is not
/// real.
std::vector<BigFloat> embeddings(const nf::NumberField& field, mpfr_prec_t bits);

BigFloat embed(const NFElement& a, const BigFloat& root);

/// Number of Dirichlet coefficients needed for D digits.
std::size_t series_cutoff(int weight, std::uint64_t level, int digits);

/// a_0 .. a_{n_max}, from the stored expansion when it is long enough,
/// otherwise extended multiplicatively from prime eigenvalues.
std::vector<NFElement> dirichlet_coefficients(const EigenSystem& sys, std::size_t n_max);

/// w_p from a_p = -w_p p^{k/2-1} for a newform of prime level p.
int atkin_lehner_sign(const EigenSystem& sys);

/// Sign of Lambda(s) = sign * Lambda(k - s).
int functional_equation_sign(const EigenSystem& sys);

struct CompletedLValue {
  int weight = 0;
  std::uint64_t level = 1;
  int s = 0;
  BigFloat value;
  int sign = 1;
  int digits = 0;
  std::size_t embedding = 0;
  std::size_t terms = 0;
  /// Sum of absolute values of the series terms; the scale that rounding
  /// errors are measured against.
  BigFloat scale;
};

/// Lambda(f, s) = (sqrt(N)/2pi)^s Gamma(s) L(f, s) at a critical integer s,
/// for the chosen real embedding of the coefficient field.
CompletedLValue lambda_value(const EigenSystem& sys, int s, int digits, std::size_t embedding = 0);

/// Relative mismatch between Lambda(s) and sign * Lambda(k - s), the latter
/// evaluated with a different splitting point of the Mellin integral.
BigFloat functional_equation_residual(const EigenSystem& sys, int s, int digits, std::size_t embedding = 0);

/// For a prime-level system lacking a_p, tries both Atkin-Lehner signs and
/// returns the system with a_p = -w_p p^{k/2-1} for the sign that satisfies
/// the functional equation.
EigenSystem with_inferred_atkin_lehner(const EigenSystem& sys, int digits);

/// First continued-fraction convergent p/q of x with q <= max_den and
/// |x - p/q| <= tol; nullopt when none exists.
std::optional<Rational> rationalize(const BigFloat& x, const Integer& max_den, const BigFloat& tol);

struct RatioReport {
  int m = 0;
  int m_other = 0;
  NFElement ratio;
  BigFloat residual;
  bool stable = false;
  int digits = 0;
};

/// Lambda(f, m) / Lambda(f, m') as an element of the coefficient field,
/// reconstructed at D and 2D digits.
RatioReport ratio_rationalize(const EigenSystem& sys, int m, int m_other, int digits);

struct CandidatePrime {
  Integer ell;
  std::string flag;
};

struct CandidateReport {
  int reference = 0;
  RatioReport ratio;
  std::vector<CandidatePrime> primes;
  /// Composite part of the norm numerator that could not be split (1 if
  /// none).
  Integer unfactored = 1;
};

inline constexpr const char* kCandidateFlag = "candidate - period-normalization dependent";

/// Primes l > j+2k-2, l != level, dividing the norm numerator of
/// Lambda(f, j+k) / Lambda(f, m0). m0 defaults to the smallest critical
/// value of the same parity that is not numerically zero.
CandidateReport candidate_congruence_primes(const EigenSystem& sys, int j, int k, int digits,
                                            std::optional<int> reference = std::nullopt);

struct PrimeScan {
  std::vector<Integer> primes;
  Integer unfactored = 1;
};

/// Primes l > 3 dividing the numerator of B_k/(2k) prod_{p in sigma} (p^k - 1).
PrimeScan zeta_sigma_primes(unsigned k, const std::vector<Integer>& sigma);

/// p^{2(j+k)} - a_p p^{j+k} + p^{j+2k-3}.
Integer local_euler_quantity(const Integer& a_p, std::uint64_t p, int j, int k);

/// Whether some prime above ell divides p^{2(j+k)} - a_p p^{j+k} + p^{k'-1}
/// with k' the weight of sys.
bool local_euler_divisor(const EigenSystem& sys, int j, int k, std::uint64_t ell, std::uint64_t p);

}  // namespace eiscong::lf
