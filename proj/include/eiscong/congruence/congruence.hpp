#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eiscong/exactmath/integer.hpp"
#include "eiscong/exactmath/poly.hpp"
#include "eiscong/modforms/modforms.hpp"

namespace eiscong::congruence {

using exact::Integer;
using exact::PolyQ;
using mf::EigenSystem;

/// The shape b_q == q^{low} + a_q + q^{high} of a congruence between a
/// genus-2 eigen system of weight (j, k) and an elliptic one of weight
/// j + 2k - 2, tested away from the level prime p.
struct CongruenceTarget {
  int j = 0, k = 0;
  std::uint64_t p = 0;
  int low = 0;   // k - 2
  int high = 0;  // j + k - 1

  /// The standard exponents; throws PreconditionError for j <= 0, odd j,
  /// or k < 3.
  static CongruenceTarget standard(int j, int k, std::uint64_t p);

  int elliptic_weight() const { return j + 2 * k - 2; }
  /// Twist exponents overridden so that they coincide.
  bool degenerate() const { return low == high; }
};

struct CongruencePair {
  std::size_t lambda = 0;  // index into primes_above(Q_f, ell)
  std::size_t Lambda = 0;  // index into primes_above(Q_F, ell)
  std::size_t embedding = 0;
};

struct CongruenceFailure {
  std::size_t lambda = 0, Lambda = 0;
  std::uint64_t q = 0;
  /// b_q - q^low - a_q - q^high in the common residue field.
  std::string gap;
};

struct CongruenceReport {
  std::uint64_t ell = 0;
  std::uint64_t qmax = 0;
  std::vector<CongruencePair> pairs;
  std::vector<std::uint64_t> verified_primes;
  std::vector<CongruenceFailure> failures;
  /// Set when the twist exponents were forced equal.
  bool saito_kurokawa_regime = false;
};

/// Tests the congruence for every pair of primes above ell in the two
/// coefficient fields over the primes q <= qmax with q != p, ell. An
/// elliptic residue-field embedding is pinned at the first q whose a_q
/// generates the residue field and reused for the rest. jobs > 1 tests
/// pairs on worker threads; output order does not depend on it.
CongruenceReport check_harder(const EigenSystem& f_sys, const EigenSystem& F_sys, const CongruenceTarget& target,
                              std::uint64_t ell, std::uint64_t qmax, unsigned jobs = 1);

struct RamanujanResult {
  std::size_t lambda = 0;
  bool holds = false;
  /// First prime where a_q != 1 + q^{k-1}, 0 if none.
  std::uint64_t first_failure = 0;
};

/// a_q == 1 + q^{weight-1} mod lambda for primes q <= qmax, q != level, ell.
std::vector<RamanujanResult> check_ramanujan(const EigenSystem& f_sys, std::uint64_t ell, std::uint64_t qmax);

/// ord_ell of B_{k'} (p^{k'} - 1) / (2k').
int bernoulli_criterion(int kprime, std::uint64_t p, std::uint64_t ell);

struct CharpolyCompatResult {
  std::size_t Lambda = 0;
  bool compatible = false;
  std::uint64_t first_failure = 0;
};

inline constexpr const char* kCharpolyCompatNote = "necessary, not sufficient";

/// For each prime Lambda above ell in F's field: whether for every q in
/// qset, cp_q has b_q - q^low - q^high as a root mod Lambda.
std::vector<CharpolyCompatResult> charpoly_compat(const EigenSystem& F_sys, const std::map<std::uint64_t, PolyQ>& cp,
                                                  const CongruenceTarget& target, std::uint64_t ell,
                                                  const std::vector<std::uint64_t>& qset);

}  // namespace eiscong::congruence
