#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "eiscong/exactmath/integer.hpp"
#include "eiscong/exactmath/matrix.hpp"
#include "eiscong/numberfield/numberfield.hpp"

namespace eiscong::mf {

using exact::Integer;
using exact::Rational;
using nf::NFElement;
using nf::NumberFieldPtr;

/// Truncated q-expansion sum_{n < prec} c_n q^n.
struct QExpansion {
  int weight = 0;
  int level = 1;
  std::vector<Rational> coeffs;

  std::size_t prec() const { return coeffs.size(); }
  const Rational& operator[](std::size_t n) const { return coeffs.at(n); }

  /// Sum and product truncate to the smaller precision; weights add under
  /// multiplication.
  friend QExpansion operator+(const QExpansion& a, const QExpansion& b);
  friend QExpansion operator-(const QExpansion& a, const QExpansion& b);
  friend QExpansion operator*(const QExpansion& a, const QExpansion& b);
  friend QExpansion operator*(const Rational& c, const QExpansion& a);
  friend bool operator==(const QExpansion& a, const QExpansion& b) {
    return a.weight == b.weight && a.level == b.level && a.coeffs == b.coeffs;
  }
};

/// Normalized E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, k >= 4 even.
QExpansion eisenstein(int k, std::size_t prec);

/// q prod (1 - q^n)^24.
QExpansion delta(std::size_t prec);

/// dim S_k(SL2(Z)) for even k (0 for odd or small k).
int cusp_dimension(int k);

/// Echelon basis g_i = q^i + O(q^{d+1}), i = 1..d, of S_k(SL2(Z)).
std::vector<QExpansion> miller_basis(int k, std::size_t prec);

/// T_m on a level-1 form; the result has precision floor((prec-1)/m) + 1.
QExpansion hecke_op(const QExpansion& g, unsigned m);

/// Matrix of T_m on the Miller basis: row i holds the basis coordinates of
/// T_m g_i.
exact::Matrix<Rational> hecke_matrix(int k, unsigned m);

/// Hecke eigenvalues of one Galois orbit of normalized eigenforms.
struct EigenSystem {
  int weight = 0;
  int level = 1;
  NumberFieldPtr field;
  std::map<std::uint64_t, NFElement> values;
  bool normalized = true;
  /// a_n for 0 <= n < prec when built from q-expansions; empty for
  /// ingested data.
  std::vector<NFElement> expansion;

  bool has(std::uint64_t q) const { return values.count(q) != 0; }
  /// a_q; throws PreconditionError naming q when absent.
  const NFElement& at(std::uint64_t q) const;
};

/// One system per Galois orbit of eigenforms in S_k(SL2(Z)), carrying a_q
/// for every requested prime. prec must be at least Q*(d+1)+1 where Q is
/// the largest requested prime and d = dim S_k.
std::vector<EigenSystem> eigen_systems_level1(int k, const std::vector<std::uint64_t>& primes,
                                              std::size_t prec);

/// Smallest precision accepted by eigen_systems_level1.
std::size_t required_precision(int k, std::uint64_t max_prime);

}  // namespace eiscong::mf
