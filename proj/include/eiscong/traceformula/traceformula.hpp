#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "eiscong/exactmath/integer.hpp"
#include "eiscong/exactmath/poly.hpp"
#include "eiscong/modforms/modforms.hpp"

namespace eiscong::trace {

using exact::Integer;
using exact::PolyQ;
using exact::Rational;

/// Hurwitz class numbers H(0..maxn), stored as the integers 12*H(n).
/// H(0) = -1/12; forms equivalent to a(x^2+y^2) and a(x^2+xy+y^2) carry
/// weights 1/2 and 1/3.
class HurwitzTable {
 public:
  /// Largest table the process will build.
  static constexpr std::uint64_t kMaxN = std::uint64_t{1} << 23;

  explicit HurwitzTable(std::uint64_t maxn);

  std::uint64_t maxn() const { return maxn_; }
  Rational value(std::uint64_t n) const;
  long twelve_h(std::uint64_t n) const;

  /// Shared table covering at least n, grown on demand (thread-safe).
  static std::shared_ptr<const HurwitzTable> covering(std::uint64_t n);

 private:
  std::uint64_t maxn_;
  std::vector<long> twelve_h_;
};

Rational hurwitz(std::uint64_t n);

/// Trace of T_m on S_k(Gamma_0(N)) for even k >= 4, N = 1 or prime, and
/// gcd(m, N) = 1.
Integer trace_tm(int k, std::uint64_t N, std::uint64_t m);

/// Trace of T_m on the new subspace of S_k(Gamma_0(p)).
Integer trace_tm_new(int k, std::uint64_t p, std::uint64_t m);

struct NewSpaceCharPoly {
  int weight = 0;
  std::uint64_t level = 0;
  std::uint64_t hecke_prime = 0;
  PolyQ poly;
};

inline constexpr long kMaxNewDimension = 12;

/// Characteristic polynomial of T_q on S_k^new(Gamma_0(p)), from power sums
/// of traces and Newton's identities.
NewSpaceCharPoly charpoly_tq_new(int k, std::uint64_t p, std::uint64_t q);

/// Eigen system of the unique newform when S_k^new(Gamma_0(p)) is
/// one-dimensional: a_q = Tr T_q for every listed prime q != p. a_p is left
/// out since the trace formula does not reach it.
mf::EigenSystem rational_newform_system(int k, std::uint64_t p, const std::vector<std::uint64_t>& primes);

/// Newton's identities: monic polynomial with the given power sums s_1..s_d.
PolyQ poly_from_power_sums(const std::vector<Rational>& power_sums);

}  // namespace eiscong::trace
