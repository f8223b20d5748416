#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "eiscong/exactmath/finite_field.hpp"

namespace eiscong::satake {

using exact::FFElement;
using exact::ResidueFieldPtr;

/// Roman-numeral family of a Borel-induced representation of GSp4(Q_p).
enum class TypeGroup { I, II, III, IV, V, VI };

std::string to_string(TypeGroup g);

/// nu^{twice_nu/2} times a product of unramified characters.
struct CharacterSymbol {
  int twice_nu = 0;
  std::string characters;
};

struct ReprTypeRecord {
  std::string type_id;
  TypeGroup group = TypeGroup::I;
  std::string inducing_data;
  std::string conditions;
  int dim_gsp4zp = 0;
  int dim_kp = 0;
  std::array<CharacterSymbol, 4> char_pattern;
  std::string central_char;

  /// New paramodular vectors: fixed by K(p) but not by GSp4(Z_p).
  bool has_new_paramodular_vector() const { return dim_gsp4zp == 0 && dim_kp >= 1; }
};

/// The 17 Borel-induced types with their fixed-vector dimensions and
/// L-parameters, as literal data.
const std::vector<ReprTypeRecord>& representation_table();

/// Throws PreconditionError("unknown type id ...").
const ReprTypeRecord& find_type(std::string_view type_id);

/// Canonical one-line-per-record serialization, for golden-data checks.
std::string table_serialization();

enum class TargetSource { LevelPNewform, Level1LocalOrigin };

/// Four Satake parameters scaled by p^{(k'-1)/2}, reduced into a residue
/// field. Compared as a multiset.
struct SatakeQuadruple {
  std::array<FFElement, 4> entries;
  int weight = 0;  // k' = j + 2k - 2
  std::uint64_t p = 0;
  /// Steinberg sign for level-p targets, 0 for the local-origin target.
  int sign = 0;
  bool scaled = true;
};

bool same_multiset(const std::array<FFElement, 4>& a, const std::array<FFElement, 4>& b);

/// p^e in F for any integer e (p invertible in F).
FFElement p_power(const ResidueFieldPtr& F, std::uint64_t p, long e);

/// Level-p newform: [+-p^{k'/2}, +-p^{(k'-2)/2}, p^{k-2}, p^{j+k-1}], one
/// quadruple per sign. Level-1 local origin:
/// [p^{j+k}, p^{k-3}, p^{j+k-1}, p^{k-2}].
std::vector<SatakeQuadruple> target_quadruple(int j, int k, std::uint64_t p, TargetSource source,
                                              const ResidueFieldPtr& F);

struct MatchResult {
  bool possible = false;
  std::string witness;
};

/// Whether the record's scaled Satake multiset, with trivial central
/// character and its free unramified values ranging over F^x, can equal
/// the target.
MatchResult type_match(const ReprTypeRecord& record, const SatakeQuadruple& target);

/// Right-hand side of an obstruction p^e == rhs.
enum class Rhs { One, MinusOne, TargetSign, MinusTargetSign, EitherSign };

struct Obstruction {
  long exponent = 0;
  Rhs rhs = Rhs::One;

  /// Evaluated in F against a level-p target of the given Steinberg sign.
  bool holds(std::uint64_t p, const ResidueFieldPtr& F, int target_sign) const;
  std::string to_string() const;
  friend bool operator==(const Obstruction& a, const Obstruction& b) {
    return a.exponent == b.exponent && a.rhs == b.rhs;
  }
};

/// Congruences on p forced by a match of the level-p target with a type of
/// family III-VI. Types I and II throw PreconditionError("unconditional").
std::vector<Obstruction> obstruction_congruences(std::string_view type_id, int j);

/// l >= max(6f + 2, e + 2).
bool borel_guard(std::uint64_t ell, int e, int f);

/// Smallest prime l' != l with l'^{3f} != 1 and l'^{4f} != 1 mod l.
std::uint64_t witness_prime(std::uint64_t ell, int f);

struct RarityResult {
  bool possible = false;
  int t = -1;
};

/// Smallest t in 0..3 with p^{j+2t} == 1 in F; blocked when none.
RarityResult local_origin_rarity(int j, std::uint64_t p, const ResidueFieldPtr& F);

enum class Conclusion { NewParamodularForced_IIa, Level1ReplacementPossible, RamanujanCongruence, Inconclusive };

std::string to_string(Conclusion c);

struct Verdict {
  int j = 0, k = 0;
  std::uint64_t p = 0, ell = 0;
  int e = 1, f = 1;
  bool borel_guard = false;
  /// Entry t is true when p^{j+2t-2} is not 1 mod the prime.
  std::array<bool, 4> power_conditions{};
  int bernoulli_valuation = 0;
  std::vector<std::string> admissible_types;
  Conclusion conclusion = Conclusion::Inconclusive;
  /// Matching assignment per admissible type of family III-VI.
  std::map<std::string, std::string> witnesses;
};

/// Three-stage classification of the local component at p of a genus-2
/// form congruent to a level-p newform of weight j + 2k - 2.
Verdict verdict(int j, int k, std::uint64_t p, std::uint64_t ell, int e, int f);

}  // namespace eiscong::satake
