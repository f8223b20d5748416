#include "eiscong/satake/satake.hpp"

#include <algorithm>
#include <sstream>

#include "eiscong/error.hpp"
#include "eiscong/exactmath/bernoulli.hpp"

namespace eiscong::satake {

std::string to_string(TypeGroup g) {
  switch (g) {
    case TypeGroup::I: return "I";
    case TypeGroup::II: return "II";
    case TypeGroup::III: return "III";
    case TypeGroup::IV: return "IV";
    case TypeGroup::V: return "V";
    case TypeGroup::VI: return "VI";
  }
  return "?";
}

namespace {

struct Family {
  TypeGroup group;
  const char* inducing;
  const char* conditions;
  std::array<CharacterSymbol, 4> pattern;
  const char* central;
};

const Family& family(TypeGroup g) {
  static const std::array<Family, 6> families{{
      {TypeGroup::I, "chi1 x chi2 >| sigma", "chi1, chi2 != nu^{+-1}; chi1 != nu^{+-1} chi2^{+-1}",
       {{{0, "chi1 chi2 sigma"}, {0, "chi1 sigma"}, {0, "chi2 sigma"}, {0, "sigma"}}}, "chi1 chi2 sigma^2"},
      {TypeGroup::II, "nu^{1/2} chi x nu^{-1/2} chi >| sigma", "chi != nu^{+-3/2}; chi^2 != nu^{+-1}",
       {{{0, "chi^2 sigma"}, {1, "chi sigma"}, {-1, "chi sigma"}, {0, "sigma"}}}, "(chi sigma)^2"},
      {TypeGroup::III, "chi x nu >| nu^{-1/2} sigma", "chi != 1, nu^{+-2}",
       {{{1, "chi sigma"}, {-1, "chi sigma"}, {1, "sigma"}, {-1, "sigma"}}}, "chi sigma^2"},
      {TypeGroup::IV, "nu x nu^2 >| nu^{-3/2} sigma", "",
       {{{3, "sigma"}, {1, "sigma"}, {-1, "sigma"}, {-3, "sigma"}}}, "sigma^2"},
      {TypeGroup::V, "nu xi x xi >| nu^{-1/2} sigma", "xi^2 = 1, xi != 1",
       {{{1, "sigma"}, {1, "xi sigma"}, {-1, "xi sigma"}, {-1, "sigma"}}}, "sigma^2"},
      {TypeGroup::VI, "nu x 1 >| nu^{-1/2} sigma", "",
       {{{1, "sigma"}, {1, "sigma"}, {-1, "sigma"}, {-1, "sigma"}}}, "sigma^2"},
  }};
  return families[static_cast<std::size_t>(g)];
}

ReprTypeRecord make(const char* id, TypeGroup g, int dim_full, int dim_para) {
  const Family& fam = family(g);
  return {id, g, fam.inducing, fam.conditions, dim_full, dim_para, fam.pattern, fam.central};
}

}  // namespace

const std::vector<ReprTypeRecord>& representation_table() {
  using G = TypeGroup;
  static const std::vector<ReprTypeRecord> table{
      make("I", G::I, 1, 2),       make("IIa", G::II, 0, 1),  make("IIb", G::II, 1, 1),
      make("IIIa", G::III, 0, 0),  make("IIIb", G::III, 1, 2), make("IVa", G::IV, 0, 0),
      make("IVb", G::IV, 0, 0),    make("IVc", G::IV, 0, 1),  make("IVd", G::IV, 1, 1),
      make("Va", G::V, 0, 0),      make("Vb", G::V, 0, 1),    make("Vc", G::V, 0, 1),
      make("Vd", G::V, 1, 0),      make("VIa", G::VI, 0, 0),  make("VIb", G::VI, 0, 0),
      make("VIc", G::VI, 0, 1),    make("VId", G::VI, 1, 1),
  };
  return table;
}

const ReprTypeRecord& find_type(std::string_view type_id) {
  for (const auto& r : representation_table()) {
    if (r.type_id == type_id) return r;
  }
  throw PreconditionError("unknown type id " + std::string(type_id));
}

std::string table_serialization() {
  std::ostringstream out;
  for (const auto& r : representation_table()) {
    out << r.type_id << '|' << to_string(r.group) << '|' << r.inducing_data << '|' << r.conditions << '|'
        << r.dim_gsp4zp << '|' << r.dim_kp << '|';
    for (const auto& c : r.char_pattern) out << c.twice_nu << ':' << c.characters << ';';
    out << '|' << r.central_char << '\n';
  }
  return out.str();
}

bool same_multiset(const std::array<FFElement, 4>& a, const std::array<FFElement, 4>& b) {
  std::array<bool, 4> used{};
  for (const auto& x : a) {
    bool found = false;
    for (std::size_t i = 0; i < 4 && !found; ++i) {
      if (!used[i] && b[i] == x) {
        used[i] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

FFElement p_power(const ResidueFieldPtr& F, std::uint64_t p, long e) {
  require(p % F->ell() != 0, "p must be invertible in the residue field");
  FFElement base = FFElement::from_integer(F, exact::Integer(static_cast<unsigned long>(p)));
  FFElement r = base.pow(exact::Integer(std::labs(e)));
  return e < 0 ? r.inverse() : r;
}

std::vector<SatakeQuadruple> target_quadruple(int j, int k, std::uint64_t p, TargetSource source, const ResidueFieldPtr& F) {
  require(k >= 3, "k must be at least 3");
  require(j >= 0 && j % 2 == 0, "j must be even and non-negative");
  require(p != F->ell(), "p must differ from the residue characteristic");
  require(exact::is_prime(p), "p must be prime");
  const int kp = j + 2 * k - 2;
  std::vector<SatakeQuadruple> out;
  if (source == TargetSource::LevelPNewform) {
    for (int sign : {1, -1}) {
      const FFElement s = FFElement::from_integer(F, sign);
      SatakeQuadruple q;
      q.entries = {s * p_power(F, p, kp / 2), s * p_power(F, p, (kp - 2) / 2), p_power(F, p, k - 2),
                   p_power(F, p, j + k - 1)};
      q.weight = kp;
      q.p = p;
      q.sign = sign;
      out.push_back(q);
    }
  } else {
    SatakeQuadruple q;
    q.entries = {p_power(F, p, j + k), p_power(F, p, k - 3), p_power(F, p, j + k - 1), p_power(F, p, k - 2)};
    q.weight = kp;
    q.p = p;
    q.sign = 0;
    out.push_back(q);
  }
  return out;
}

namespace {

// Beyond this the type III search over F^x is refused.
constexpr std::uint64_t kMaxSearchOrder = std::uint64_t{1} << 22;

std::string sign_str(int s) { return s > 0 ? "+1" : "-1"; }

}  // namespace

MatchResult type_match(const ReprTypeRecord& record, const SatakeQuadruple& target) {
  const ResidueFieldPtr& F = target.entries[0].field();
  const std::uint64_t p = target.p;
  const int kp = target.weight;
  require(kp % 2 == 0, "weight must be even");
  // A = p^{(k'-2)/2}; the scaled parameters nu^{+-1/2} give A p and A.
  const FFElement A = p_power(F, p, (kp - 2) / 2);
  const FFElement P = p_power(F, p, 1);
  const FFElement minus = FFElement::from_integer(F, -1);
  const FFElement central = p_power(F, p, kp - 1);  // product of paired parameters
  const auto& t = target.entries;

  switch (record.group) {
    case TypeGroup::I: {
      // {u, S/u, v, S/v} with S = p^{k'-1}: two pairs of product S.
      for (std::size_t partner = 1; partner < 4; ++partner) {
        std::array<std::size_t, 2> rest{};
        std::size_t n = 0;
        for (std::size_t i = 1; i < 4; ++i) {
          if (i != partner) rest[n++] = i;
        }
        if (t[0] * t[partner] == central && t[rest[0]] * t[rest[1]] == central) {
          return {true, "pairs (" + t[0].to_string() + ", " + t[partner].to_string() + "), (" +
                            t[rest[0]].to_string() + ", " + t[rest[1]].to_string() + ")"};
        }
      }
      return {false, ""};
    }
    case TypeGroup::II: {
      // {eta A p, eta A, u, S/u} with eta^2 = 1.
      for (int eta : {1, -1}) {
        const FFElement e = FFElement::from_integer(F, eta);
        for (std::size_t i = 0; i < 4; ++i) {
          for (std::size_t l = 0; l < 4; ++l) {
            if (i == l || t[i] != e * A * P || t[l] != e * A) continue;
            std::array<std::size_t, 2> rest{};
            std::size_t n = 0;
            for (std::size_t m = 0; m < 4; ++m) {
              if (m != i && m != l) rest[n++] = m;
            }
            if (t[rest[0]] * t[rest[1]] == central) {
              return {true, "chi sigma(p) = " + sign_str(eta) + ", sigma(p) scaled = " + t[rest[0]].to_string()};
            }
          }
        }
      }
      return {false, ""};
    }
    case TypeGroup::III: {
      // {A p / b, A / b, A p b, A b}, b = sigma(p) over all of F^x.
      const exact::Integer order = F->order();
      require(order <= kMaxSearchOrder, "residue field too large for the type III search");
      const std::uint64_t n = order.get_ui();
      for (std::uint64_t idx = 1; idx < n; ++idx) {
        const FFElement b(F, F->from_index(idx));
        const FFElement bi = b.inverse();
        std::array<FFElement, 4> pattern{A * P * bi, A * bi, A * P * b, A * b};
        if (same_multiset(pattern, t)) return {true, "sigma(p) = " + b.to_string()};
      }
      return {false, ""};
    }
    case TypeGroup::IV: {
      for (int s : {1, -1}) {
        const FFElement sv = FFElement::from_integer(F, s);
        std::array<FFElement, 4> pattern{sv * A * P * P, sv * A * P, sv * A, sv * A * P.inverse()};
        if (same_multiset(pattern, t)) return {true, "sigma(p) = " + sign_str(s)};
      }
      return {false, ""};
    }
    case TypeGroup::V: {
      for (int s : {1, -1}) {
        const FFElement sv = FFElement::from_integer(F, s);
        std::array<FFElement, 4> pattern{sv * A * P, minus * sv * A * P, minus * sv * A, sv * A};
        if (same_multiset(pattern, t)) return {true, "sigma(p) = " + sign_str(s) + ", xi(p) = -1"};
      }
      return {false, ""};
    }
    case TypeGroup::VI: {
      for (int s : {1, -1}) {
        const FFElement sv = FFElement::from_integer(F, s);
        std::array<FFElement, 4> pattern{sv * A * P, sv * A * P, sv * A, sv * A};
        if (same_multiset(pattern, t)) return {true, "sigma(p) = " + sign_str(s)};
      }
      return {false, ""};
    }
  }
  throw PreconditionError("unknown type id " + record.type_id);
}

bool Obstruction::holds(std::uint64_t p, const ResidueFieldPtr& F, int target_sign) const {
  const FFElement v = p_power(F, p, exponent);
  const FFElement one = FFElement::from_integer(F, 1);
  switch (rhs) {
    case Rhs::One: return v == one;
    case Rhs::MinusOne: return v == -one;
    case Rhs::TargetSign: return v == FFElement::from_integer(F, target_sign);
    case Rhs::MinusTargetSign: return v == FFElement::from_integer(F, -target_sign);
    case Rhs::EitherSign: return v == one || v == -one;
  }
  return false;
}

std::string Obstruction::to_string() const {
  std::string lhs = exponent == 1 ? "p" : "p^" + std::to_string(exponent);
  switch (rhs) {
    case Rhs::One: return lhs + " == 1";
    case Rhs::MinusOne: return lhs + " == -1";
    case Rhs::TargetSign: return lhs + " == +-1 (target sign)";
    case Rhs::MinusTargetSign: return lhs + " == -+1 (minus target sign)";
    case Rhs::EitherSign: return lhs + " == +-1";
  }
  return lhs;
}

std::vector<Obstruction> obstruction_congruences(std::string_view type_id, int j) {
  require(j % 2 == 0, "j must be even");
  const ReprTypeRecord* rec = nullptr;
  for (const auto& r : representation_table()) {
    if (r.type_id == type_id || to_string(r.group) == type_id) {
      rec = &r;
      break;
    }
  }
  if (rec == nullptr) throw PreconditionError("unknown type id " + std::string(type_id));
  const long h = j / 2;
  const std::vector<Obstruction> six{{1, Rhs::One}, {h + 1, Rhs::TargetSign}, {h, Rhs::TargetSign}};
  const std::vector<Obstruction> four{{h + 2, Rhs::EitherSign}, {h + 1, Rhs::EitherSign}, {h, Rhs::EitherSign},
                                      {h - 1, Rhs::EitherSign}};
  switch (rec->group) {
    case TypeGroup::I:
    case TypeGroup::II: throw PreconditionError("unconditional");
    case TypeGroup::VI: return six;
    case TypeGroup::V: return {{1, Rhs::MinusOne}, {h + 1, Rhs::MinusTargetSign}, {h, Rhs::MinusTargetSign}};
    case TypeGroup::IV: return four;
    case TypeGroup::III: {
      std::vector<Obstruction> both = six;
      both.insert(both.end(), four.begin(), four.end());
      return both;
    }
  }
  return {};
}

bool borel_guard(std::uint64_t ell, int e, int f) {
  require(e >= 1 && f >= 1, "e and f must be positive");
  const auto bound = static_cast<std::uint64_t>(std::max(6 * f + 2, e + 2));
  return ell >= bound;
}

std::uint64_t witness_prime(std::uint64_t ell, int f) {
  require(f >= 1, "f must be positive");
  require(exact::is_prime(ell), "ell must be prime");
  if (ell < static_cast<std::uint64_t>(6 * f + 2)) throw PreconditionError("guard violated");
  for (std::uint64_t q = 2;; q = exact::next_prime(exact::Integer(static_cast<unsigned long>(q))).get_ui()) {
    if (q == ell) continue;
    const std::uint64_t r = q % ell;
    if (exact::powmod(r, static_cast<std::uint64_t>(3 * f), ell) != 1 &&
        exact::powmod(r, static_cast<std::uint64_t>(4 * f), ell) != 1) {
      return q;
    }
  }
}

RarityResult local_origin_rarity(int j, std::uint64_t p, const ResidueFieldPtr& F) {
  require(j != 0, "j = 0 is excluded");
  require(j > 0 && j % 2 == 0, "j must be even and positive");
  require(p != F->ell(), "p must differ from the residue characteristic");
  const FFElement one = FFElement::from_integer(F, 1);
  for (int t = 0; t <= 3; ++t) {
    if (p_power(F, p, j + 2 * t) == one) return {true, t};
  }
  return {false, -1};
}

std::string to_string(Conclusion c) {
  switch (c) {
    case Conclusion::NewParamodularForced_IIa: return "type IIa or level-1 replacement";
    case Conclusion::Level1ReplacementPossible: return "level-1 replacement possible";
    case Conclusion::RamanujanCongruence: return "Ramanujan congruence";
    case Conclusion::Inconclusive: return "inconclusive";
  }
  return "?";
}

Verdict verdict(int j, int k, std::uint64_t p, std::uint64_t ell, int e, int f) {
  require(k >= 3, "k must be at least 3");
  require(j > 0, "j must be positive");
  require(j % 2 == 0, "j must be even");
  require(exact::is_prime(p), "p must be prime");
  require(exact::is_prime(ell), "ell must be prime");
  require(p != ell, "p must differ from ell");
  require(e >= 1 && f >= 1, "e and f must be positive");
  const int kp = j + 2 * k - 2;
  require(ell > static_cast<std::uint64_t>(kp), "ell must exceed j + 2k - 2");

  Verdict v;
  v.j = j;
  v.k = k;
  v.p = p;
  v.ell = ell;
  v.e = e;
  v.f = f;
  v.borel_guard = borel_guard(ell, e, f);
  if (!v.borel_guard) return v;

  // p is rational, so p^n == 1 mod a prime above ell iff it is mod ell.
  for (int t = 0; t <= 3; ++t) {
    const long n = j + 2 * t - 2;
    v.power_conditions[static_cast<std::size_t>(t)] = exact::powmod(p % ell, static_cast<std::uint64_t>(n), ell) != 1;
  }
  v.bernoulli_valuation = exact::ord_at(exact::zeta_quantity(static_cast<unsigned>(kp), {exact::Integer(static_cast<unsigned long>(p))}),
                                        exact::Integer(static_cast<unsigned long>(ell)));

  const auto F = exact::ResidueField::standard(ell, f);
  const auto targets = target_quadruple(j, k, p, TargetSource::LevelPNewform, F);
  for (const auto& rec : representation_table()) {
    for (const auto& target : targets) {
      auto m = type_match(rec, target);
      if (!m.possible) continue;
      v.admissible_types.push_back(rec.type_id);
      if (rec.group != TypeGroup::I && rec.group != TypeGroup::II) {
        v.witnesses[rec.type_id] = "sign " + sign_str(target.sign) + ": " + m.witness;
      }
      break;
    }
  }

  const bool powers_ok = std::all_of(v.power_conditions.begin(), v.power_conditions.end(), [](bool b) { return b; });
  if (!powers_ok) {
    v.conclusion = Conclusion::Inconclusive;
  } else if (v.bernoulli_valuation > 0) {
    v.conclusion = Conclusion::RamanujanCongruence;
  } else {
    v.conclusion = Conclusion::NewParamodularForced_IIa;
  }
  return v;
}

}  // namespace eiscong::satake
