#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "eiscong/exactmath/poly.hpp"

namespace eiscong::exact {

/// Largest degree of a squarefree part that factor_poly_rational accepts.
inline constexpr long kMaxFactorDegree = 12;

/// Factorization of f mod ell into monic irreducibles with multiplicities,
/// sorted by canonical_less. The coefficients of f must be ell-integral and
/// the leading coefficient must stay nonzero mod ell.
std::vector<std::pair<FpPoly, int>> factor_poly_mod(const PolyQ& f, std::uint64_t ell);

struct RationalFactorization {
  Rational unit;  // leading coefficient of the input
  std::vector<std::pair<PolyQ, int>> factors;  // monic irreducibles, canonical order
};

/// Complete factorization over Q. Throws ComputationError when a squarefree
/// part has degree above kMaxFactorDegree.
RationalFactorization factor_poly_rational(const PolyQ& f);

/// Irreducibility over Q; constants are not irreducible.
bool is_irreducible(const PolyQ& f);

/// Squarefree decomposition over Q: monic f = prod g_i^i with g_i monic,
/// squarefree and pairwise coprime. Only nonconstant parts are returned.
std::vector<std::pair<PolyQ, int>> squarefree_rational(const PolyQ& f);

}  // namespace eiscong::exact
