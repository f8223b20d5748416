#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "eiscong/congruence/congruence.hpp"
#include "eiscong/error.hpp"
#include "eiscong/exactmath/bernoulli.hpp"
#include "eiscong/exactmath/finite_field.hpp"
#include "eiscong/traceformula/traceformula.hpp"

using namespace eiscong;
using namespace eiscong::congruence;
using exact::Rational;
using nf::NFElement;

namespace {

mf::EigenSystem tau_system(std::uint64_t qmax) {
  return mf::eigen_systems_level1(12, exact::primes_up_to(qmax), mf::required_precision(12, qmax)).at(0);
}

Integer ipow_u(std::uint64_t q, int e) { return exact::ipow(Integer(static_cast<unsigned long>(q)), static_cast<unsigned long>(e)); }

/// Genus-2 data b_q = a_q + q^low + q^high + shift_q over the given field.
mf::EigenSystem twisted(const mf::EigenSystem& f, const CongruenceTarget& t, nf::NumberFieldPtr field,
                        const std::function<NFElement(std::uint64_t)>& shift) {
  mf::EigenSystem F;
  F.weight = t.k;
  F.level = static_cast<int>(t.p);
  F.field = field;
  for (auto& [q, a] : f.values) {
    NFElement lifted(field, a.coords());
    F.values.emplace(q, lifted + NFElement::from_rational(field, Rational(ipow_u(q, t.low) + ipow_u(q, t.high))) + shift(q));
  }
  return F;
}

}  // namespace

TEST_CASE("roots in extension fields") {
  auto F = exact::ResidueField::standard(7, 2);
  auto E = exact::ResidueField::standard(7, 4);
  auto roots = exact::roots_in(F->modulus(), E);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] != roots[1]);
  // Embedding is a ring map.
  auto a = exact::FFElement::generator(F) + exact::FFElement::from_integer(F, 3);
  auto b = a * a + exact::FFElement::from_integer(F, 5);
  for (auto& r : roots) {
    CHECK(exact::embed_into(a * b, r) == exact::embed_into(a, r) * exact::embed_into(b, r));
    CHECK(exact::embed_into(a + b, r) == exact::embed_into(a, r) + exact::embed_into(b, r));
  }
  // x^4 - 1 over F_5 splits completely; x^2 + 1 over F_2 has the double root 1 once.
  CHECK(exact::roots_in(exact::FpPoly(5, {4, 0, 0, 0, 1}), exact::ResidueField::standard(5, 1)).size() == 4);
  CHECK(exact::roots_in(exact::FpPoly(2, {1, 0, 1}), exact::ResidueField::standard(2, 3)).size() == 1);
  // Brute force in F_{3^3}: roots of x^3 - x - 1 (irreducible over F_3).
  auto G = exact::ResidueField::standard(3, 3);
  const exact::FpPoly g(3, {2, 2, 0, 1});
  std::vector<exact::FFElement> brute;
  for (std::uint64_t i = 0; i < 27; ++i) {
    exact::FFElement x(G, G->from_index(i));
    if ((x * x * x - x - exact::FFElement::from_integer(G, 1)).is_zero()) brute.push_back(x);
  }
  std::sort(brute.begin(), brute.end());
  CHECK(exact::roots_in(g, G) == brute);
}

TEST_CASE("Ramanujan congruence for Delta") {
  const auto tau = tau_system(100);
  // Independent oracle: coefficients of the product expansion.
  const auto delta = mf::delta(101);
  for (auto q : exact::primes_up_to(100)) {
    const Integer tq = delta[q].get_num();
    CHECK(exact::mod_u64(Integer(tq - 1 - ipow_u(q, 11)), 691) == 0);
    CHECK(tau.at(q).to_rational() == delta[q]);
  }
  auto r = check_ramanujan(tau, 691, 100);
  REQUIRE(r.size() == 1);
  CHECK(r[0].holds);
  CHECK(r[0].first_failure == 0);

  auto bad = check_ramanujan(tau, 683, 100);
  CHECK_FALSE(bad[0].holds);
  CHECK(bad[0].first_failure == 2);
  CHECK_THROWS_WITH(check_ramanujan(tau, 689, 100), doctest::Contains("prime"));

  auto shifted = tau;
  shifted.values[7] = shifted.values[7] + NFElement::from_rational(shifted.field, 1);
  auto s = check_ramanujan(shifted, 691, 100);
  CHECK_FALSE(s[0].holds);
  CHECK(s[0].first_failure == 7);

  auto missing = tau;
  missing.values.erase(53);
  CHECK_THROWS_WITH(check_ramanujan(missing, 691, 100), doctest::Contains("q = 53"));
}

TEST_CASE("Bernoulli criterion") {
  CHECK(bernoulli_criterion(12, 2, 691) == 1);
  CHECK(bernoulli_criterion(22, 2, 41) == 0);
  // 2^22 - 1 = 3 * 23 * 89 * 683; 3 and 23 cancel against the denominator of B_22.
  CHECK(bernoulli_criterion(22, 2, 89) >= 1);
  CHECK(bernoulli_criterion(22, 2, 683) >= 1);
  CHECK(bernoulli_criterion(22, 2, 23) == 0);
  // 3^12 - 1 = 2^4 * 5 * 7 * 13 * 73.
  CHECK(bernoulli_criterion(12, 3, 73) >= 1);
  // Direct evaluation of the rational.
  for (int kp : {12, 16, 18, 20, 22, 24}) {
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL}) {
      const Rational x = exact::bernoulli(static_cast<unsigned>(kp)) * Rational(ipow_u(p, kp) - 1) / Rational(2 * kp);
      for (auto ell : exact::primes_up_to(200)) {
        CHECK(bernoulli_criterion(kp, p, ell) == exact::ord_at(x, Integer(static_cast<unsigned long>(ell))));
      }
    }
  }
  CHECK_THROWS_AS(bernoulli_criterion(11, 2, 691), PreconditionError);
  CHECK_THROWS_AS(bernoulli_criterion(12, 2, 689), PreconditionError);
}

TEST_CASE("Ramanujan congruence implies a Bernoulli prime") {
  // Level 1, all weights with one-dimensional or quadratic cusp spaces.
  for (int kp : {12, 16, 18, 20, 22, 24}) {
    auto systems = mf::eigen_systems_level1(kp, exact::primes_up_to(30), mf::required_precision(kp, 30));
    for (auto& sys : systems) {
      for (auto ell : exact::primes_up_to(800)) {
        if (ell <= static_cast<std::uint64_t>(kp) + 1) continue;
        for (auto& r : check_ramanujan(sys, ell, 30)) {
          if (r.holds) CHECK(bernoulli_criterion(kp, 2, ell) >= 1);
        }
      }
    }
  }
  // Level p, rational newforms.
  for (auto [kp, p] : std::vector<std::pair<int, std::uint64_t>>{{8, 2}, {6, 3}, {4, 5}, {4, 7}, {6, 5}}) {
    auto sys = trace::rational_newform_system(kp, p, exact::primes_up_to(40));
    for (auto ell : exact::primes_up_to(3000)) {
      if (ell <= static_cast<std::uint64_t>(kp) + 1 || ell == p) continue;
      if (check_ramanujan(sys, ell, 40)[0].holds) CHECK(bernoulli_criterion(kp, p, ell) >= 1);
    }
  }
}

TEST_CASE("Harder congruence on constructed data") {
  const auto t = CongruenceTarget::standard(2, 4, 2);
  CHECK(t.low == 2);
  CHECK(t.high == 5);
  CHECK(t.elliptic_weight() == 8);
  const auto f = trace::rational_newform_system(8, 2, exact::primes_up_to(60));

  // Q(sqrt 3) with 13 split as (13, theta - 4)(13, theta + 4).
  const std::uint64_t ell = 13;
  auto K = nf::NumberField::create(exact::PolyQ(std::vector<Rational>{-3, 0, 1}));
  const NFElement pi = NFElement::generator(K) - NFElement::from_rational(K, 4);
  auto split = nf::primes_above(*K, ell).primes;
  REQUIRE(split.size() == 2);
  std::size_t target_index = nf::reduce_mod(pi, split[0]).is_zero() ? 0 : 1;

  std::mt19937_64 rng(17);
  auto F = twisted(f, t, K, [&](std::uint64_t) {
    const long r = 1 + static_cast<long>(rng() % 12), s = static_cast<long>(rng() % 5) - 2;
    return pi * NFElement::from_rational(K, r) + NFElement::from_rational(K, Rational(13 * s));
  });

  auto rep = check_harder(f, F, t, ell, 50);
  REQUIRE(rep.pairs.size() == 1);
  CHECK(rep.pairs[0].lambda == 0);
  CHECK(rep.pairs[0].Lambda == target_index);
  CHECK_FALSE(rep.saito_kurokawa_regime);
  CHECK(std::find(rep.verified_primes.begin(), rep.verified_primes.end(), 2ULL) == rep.verified_primes.end());
  CHECK(std::find(rep.verified_primes.begin(), rep.verified_primes.end(), 13ULL) == rep.verified_primes.end());
  CHECK(rep.verified_primes.size() == exact::primes_up_to(50).size() - 2);

  auto parallel = check_harder(f, F, t, ell, 50, 4);
  REQUIRE(parallel.pairs.size() == 1);
  CHECK(parallel.pairs[0].Lambda == target_index);
  CHECK(parallel.failures.size() == rep.failures.size());

  // A single perturbed q kills the pair and is reported.
  for (std::uint64_t q : {3ULL, 29ULL, 47ULL}) {
    auto G = F;
    G.values[q] = G.values[q] + NFElement::from_rational(K, 1);
    auto r = check_harder(f, G, t, ell, 50);
    CHECK(r.pairs.empty());
    bool seen = false;
    for (auto& fail : r.failures) seen = seen || (fail.Lambda == target_index && fail.q == q);
    CHECK(seen);
  }

  // Values at p and at ell are never consulted.
  auto H = F;
  H.values[2] = NFElement::from_rational(K, 12345);
  H.values[13] = NFElement::from_rational(K, 1);
  CHECK(check_harder(f, H, t, ell, 50).pairs.size() == 1);

  auto missing = F;
  missing.values.erase(31);
  CHECK_THROWS_WITH(check_harder(f, missing, t, ell, 50), doctest::Contains("q = 31"));
  CHECK_THROWS_AS(check_harder(f, F, CongruenceTarget::standard(4, 4, 2), ell, 50), PreconditionError);
  CHECK_THROWS_AS(check_harder(f, F, t, 2, 50), PreconditionError);
  CHECK_THROWS_AS(CongruenceTarget::standard(0, 5, 2), PreconditionError);

  // j = 0 with forced-equal exponents: evaluated and flagged.
  CongruenceTarget sk{0, 5, 2, 3, 3};
  auto rs = check_harder(f, twisted(f, sk, K, [&](std::uint64_t) { return NFElement::from_rational(K, 0); }), sk, ell, 50);
  CHECK(rs.saito_kurokawa_regime);
  CHECK(rs.pairs.size() == 2);
  CongruenceTarget j0{0, 5, 2, 3, 4};
  CHECK_THROWS_AS(check_harder(f, F, j0, ell, 50), PreconditionError);
}

TEST_CASE("Harder congruence across residue-field embeddings") {
  // Weight 24 = j + 2k - 2 with (j, k) = (4, 11); coefficient field Q(sqrt 144169).
  const auto f = mf::eigen_systems_level1(24, exact::primes_up_to(40), mf::required_precision(24, 40)).at(0);
  const auto t = CongruenceTarget::standard(4, 11, 2);
  int split_seen = 0, inert_seen = 0;
  for (auto ell : exact::primes_up_to(120)) {
    if (ell <= 3) continue;
    auto primes = nf::primes_above(*f.field, ell);
    if (primes.order_may_be_nonmaximal) continue;
    std::mt19937_64 rng(ell);
    auto F = twisted(f, t, f.field, [&](std::uint64_t) {
      return NFElement::from_rational(f.field, Rational(static_cast<long>(ell) * static_cast<long>(rng() % 7)));
    });
    auto rep = check_harder(f, F, t, ell, 40);
    if (primes.primes.size() == 2) {
      ++split_seen;
      std::set<std::pair<std::size_t, std::size_t>> got;
      for (auto& pr : rep.pairs) got.emplace(pr.lambda, pr.Lambda);
      CHECK(got.count({0, 0}) == 1);
      CHECK(got.count({1, 1}) == 1);
    } else if (primes.primes.size() == 1 && primes.primes[0].f == 2) {
      ++inert_seen;
      // One pair; the matching embedding is found among the two.
      REQUIRE(rep.pairs.size() == 1);
      auto G = F;
      const std::uint64_t q = ell == 5 ? 7 : 5;
      G.values[q] = G.values[q] + NFElement::generator(f.field);
      CHECK(check_harder(f, G, t, ell, 40).pairs.empty());
    }
  }
  CHECK(split_seen > 0);
  CHECK(inert_seen > 0);
}

TEST_CASE("characteristic polynomial compatibility") {
  const auto t = CongruenceTarget::standard(2, 4, 2);
  const auto qs = exact::primes_up_to(40);
  const auto f = trace::rational_newform_system(8, 2, qs);
  auto Q = f.field;
  auto F = twisted(f, t, Q, [&](std::uint64_t) { return NFElement::from_rational(Q, 0); });

  std::map<std::uint64_t, exact::PolyQ> linear, newspace;
  for (auto q : qs) {
    if (q == 2) continue;
    linear[q] = exact::PolyQ(std::vector<Rational>{-f.at(q).to_rational(), 1});
    newspace[q] = trace::charpoly_tq_new(8, 2, q).poly;
  }
  auto r = charpoly_compat(F, linear, t, 11, qs);
  REQUIRE(r.size() == 1);
  CHECK(r[0].compatible);
  CHECK(std::string(kCharpolyCompatNote) == "necessary, not sufficient");

  auto G = F;
  G.values[17] = G.values[17] + NFElement::from_rational(Q, 1);
  auto bad = charpoly_compat(G, linear, t, 11, qs);
  CHECK_FALSE(bad[0].compatible);
  CHECK(bad[0].first_failure == 17);

  auto gap = linear;
  gap.erase(19);
  CHECK_THROWS_WITH(charpoly_compat(F, gap, t, 11, qs), doctest::Contains("q = 19"));

  // A verified Harder pair implies compatibility with the new-space charpoly.
  for (auto ell : {11ULL, 13ULL, 37ULL}) {
    auto rep = check_harder(f, F, t, ell, 40);
    if (!rep.pairs.empty()) CHECK(charpoly_compat(F, newspace, t, ell, qs)[0].compatible);
  }

  // Random cubics over F_{7^2}: compare with exhaustive root search.
  auto K = nf::NumberField::create(exact::PolyQ(std::vector<Rational>{1, 0, 1}));  // 7 inert
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    mf::EigenSystem S;
    S.weight = t.k;
    S.level = 2;
    S.field = K;
    std::map<std::uint64_t, exact::PolyQ> cps;
    const std::vector<std::uint64_t> qq{3, 5};
    for (auto q : qq) {
      S.values.emplace(q, NFElement(K, {Rational(static_cast<long>(rng() % 7)), Rational(static_cast<long>(rng() % 7))}));
      std::vector<Rational> c{Rational(static_cast<long>(rng() % 7)), Rational(static_cast<long>(rng() % 7)),
                              Rational(static_cast<long>(rng() % 7)), 1};
      // Plant a root half of the time.
      if (trial % 2 == 0) c[0] = Rational(0);
      cps[q] = exact::PolyQ(c);
    }
    auto res = charpoly_compat(S, cps, t, 7, qq);
    REQUIRE(res.size() == 1);
    const auto P = nf::primes_above(*K, 7).primes.at(0);
    bool expect = true;
    for (auto q : qq) {
      const auto x0 = nf::reduce_mod(S.at(q), P) - exact::FFElement::from_integer(P.residue, ipow_u(q, t.low) + ipow_u(q, t.high));
      const auto poly = exact::reduce_mod(cps[q], 7);
      bool found = false;
      for (std::uint64_t i = 0; i < 49; ++i) {
        exact::FFElement x(P.residue, P.residue->from_index(i));
        exact::FFElement acc = exact::FFElement::from_integer(P.residue, 0);
        for (auto it = poly.coeffs().rbegin(); it != poly.coeffs().rend(); ++it) {
          acc = acc * x + exact::FFElement::from_integer(P.residue, Integer(static_cast<unsigned long>(*it)));
        }
        if (acc.is_zero() && x == x0) found = true;
      }
      expect = expect && found;
    }
    CHECK(res[0].compatible == expect);
  }
}
