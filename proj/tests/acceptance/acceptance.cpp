// End-to-end acceptance run: one line per criterion, nonzero exit if any
// criterion fails or exceeds its time budget.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eiscong/congruence/congruence.hpp"
#include "eiscong/error.hpp"
#include "eiscong/exactmath/bernoulli.hpp"
#include "eiscong/lfunction/lfunction.hpp"
#include "eiscong/satake/satake.hpp"
#include "eiscong/traceformula/traceformula.hpp"

using namespace eiscong;
using exact::Integer;
using exact::Rational;
using nf::NFElement;

namespace {

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back("failed: " + what);
    }
  }
};

std::string run_cli(const std::string& args) {
  const std::string cmd = std::string(EISCONG_CLI_PATH) + " " + args + " 2>&1";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) out += buf.data();
  pclose(pipe);
  return out;
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (l == line) return true;
  }
  return false;
}

Integer ipow_u(std::uint64_t q, long e) { return exact::ipow(Integer(static_cast<unsigned long>(q)), static_cast<unsigned long>(e)); }

Outcome ramanujan_691() {
  Outcome o;
  const auto pass = run_cli("ramanujan-check --weight 12 --ell 691 --qmax 100");
  o.expect(has_line(pass, "lambda.0: holds"), "tau == sigma_11 mod 691 for q <= 100");
  const auto fail = run_cli("ramanujan-check --weight 12 --ell 683 --qmax 100");
  o.expect(has_line(fail, "lambda.0: fails at q = 2"), "ell = 683 fails at q = 2");
  return o;
}

Outcome bernoulli_zeta() {
  Outcome o;
  o.expect(exact::bernoulli(12) == Rational(-691, 2730), "B_12 = -691/2730");
  auto scan = lf::zeta_sigma_primes(12, {});
  o.expect(scan.primes == std::vector<Integer>{691} && scan.unfactored == 1, "zeta primes of weight 12 = {691}");
  o.expect(congruence::bernoulli_criterion(12, 2, 691) == 1, "criterion(12, 2, 691) = 1");
  o.expect(congruence::bernoulli_criterion(22, 2, 41) == 0, "criterion(22, 2, 41) = 0");
  return o;
}

Outcome trace_oracle() {
  Outcome o;
  int mismatches = 0;
  for (int k = 12; k <= 28; k += 2) {
    for (unsigned m = 1; m <= 20; ++m) {
      auto M = mf::hecke_matrix(k, m);
      Rational tr = 0;
      for (std::size_t i = 0; i < M.size(); ++i) tr += M[i][i];
      if (Rational(trace::trace_tm(k, 1, m)) != tr) ++mismatches;
    }
  }
  o.expect(mismatches == 0, std::to_string(mismatches) + " trace mismatches");
  int bad = 0;
  for (std::uint64_t n = 1; n <= 100; ++n) {
    Rational lhs = 0;
    for (long t = -2 * static_cast<long>(n); t <= 2 * static_cast<long>(n); ++t) {
      if (static_cast<std::uint64_t>(t * t) <= 4 * n) lhs += trace::hurwitz(4 * n - static_cast<std::uint64_t>(t * t));
    }
    Integer rhs = 0;
    for (auto d : exact::divisors(n)) rhs += std::max(d, n / d);
    if (lhs != Rational(rhs)) ++bad;
  }
  o.expect(bad == 0, std::to_string(bad) + " class-number relation failures");
  return o;
}

Outcome satake_equivalence() {
  using namespace satake;
  Outcome o;
  std::mt19937_64 rng(20240601);
  const auto primes = exact::primes_up_to(160);
  int instances = 0, unsound = 0, v_mismatch = 0, some_hold = 0, none_hold = 0, loose = 0;
  while (instances < 240) {
    const int j = 2 * (1 + static_cast<int>(rng() % 8)), k = 3 + static_cast<int>(rng() % 8), f = 1 + static_cast<int>(rng() % 2);
    const std::uint64_t p = primes[rng() % 8];
    std::uint64_t ell;
    if (instances % 2 == 0) {
      // Force a small order of p: ell divides p^e - 1 or p^e + 1 for small e.
      const long e = 1 + static_cast<long>(rng() % (j / 2 + 2));
      auto divs = exact::prime_divisors(ipow_u(p, e) + ((rng() % 2) ? 1 : -1));
      std::vector<std::uint64_t> ok;
      for (auto& d : divs) {
        if (d != p && d > 2 && d < 400) ok.push_back(d.get_ui());
      }
      if (ok.empty()) continue;
      ell = ok[rng() % ok.size()];
    } else {
      ell = primes[8 + rng() % (primes.size() - 8)];
    }
    if (ell == p || (f == 2 && ell > 200)) continue;
    ++instances;
    const auto F = exact::ResidueField::standard(ell, f);
    for (auto& t : target_quadruple(j, k, p, TargetSource::LevelPNewform, F)) {
      for (const auto& r : representation_table()) {
        if (r.group == TypeGroup::I || r.group == TypeGroup::II) continue;
        const bool possible = type_match(r, t).possible;
        bool holds = false;
        for (auto& ob : obstruction_congruences(r.type_id, j)) holds = holds || ob.holds(p, F, t.sign);
        (holds ? some_hold : none_hold)++;
        if (possible && !holds) ++unsound;
        if (!possible && holds) ++loose;
        if (r.group == TypeGroup::V && possible != holds) ++v_mismatch;
      }
    }
  }
  o.expect(instances >= 200, "at least 200 instances");
  o.expect(unsound == 0, std::to_string(unsound) + " matches with no listed congruence");
  o.expect(v_mismatch == 0, std::to_string(v_mismatch) + " type V disagreements");
  o.expect(some_hold > 0 && none_hold > 0, "both regimes sampled");
  o.notes.push_back(std::to_string(instances) + " instances; " + std::to_string(loose) +
                    " III/IV/VI cases where a listed congruence holds without a match");

  auto v = verdict(4, 10, 2, 41, 1, 1);
  o.expect(v.admissible_types == std::vector<std::string>{"I", "IIa", "IIb"}, "(4,10,2,41) admits exactly I, IIa, IIb");

  const auto F5 = exact::ResidueField::standard(5, 1);
  o.expect(p_power(F5, 2, 4) == exact::FFElement::from_integer(F5, 1), "2^4 == 1 mod 5");
  std::string witness;
  for (auto& t : target_quadruple(4, 10, 2, TargetSource::LevelPNewform, F5)) {
    for (const auto& r : representation_table()) {
      if (r.group == TypeGroup::I || r.group == TypeGroup::II || !witness.empty()) continue;
      auto m = type_match(r, t);
      if (m.possible) witness = r.type_id + ": " + m.witness;
    }
  }
  o.expect(!witness.empty(), "a type III-VI match for (4,10,2,5)");
  if (!witness.empty()) o.notes.push_back("(4,10,2,5) witness " + witness);
  return o;
}

Outcome verdict_pipeline() {
  Outcome o;
  const auto out = run_cli("verdict --j 4 --k 10 --p 2 --ell 41 --e 1 --f 1");
  o.expect(has_line(out, "borel_guard: pass"), "guard pass");
  for (int t = 0; t < 4; ++t) {
    o.expect(has_line(out, "power_condition.t" + std::to_string(t) + ": pass (p^" + std::to_string(4 + 2 * t - 2) + " != 1)"),
             "power condition t = " + std::to_string(t));
  }
  o.expect(has_line(out, "bernoulli_valuation: 0"), "Bernoulli valuation 0");
  o.expect(has_line(out, "conclusion: type IIa or level-1 replacement"), "conclusion line");
  return o;
}

Outcome witness() {
  Outcome o;
  const std::uint64_t w = satake::witness_prime(41, 1);
  o.expect(w == 2, "witness_prime(41, 1) = 2");
  Integer prod = ipow_u(w, 6);
  for (int i = 1; i <= 4; ++i) prod *= ipow_u(w, i) - 1;
  o.expect(exact::mod_u64(prod, 41) != 0, "41 does not divide l'^6 (l'-1)(l'^2-1)(l'^3-1)(l'^4-1)");
  return o;
}

Outcome lfunction_properties() {
  Outcome o;
  const int D = 100;
  const std::size_t n = lf::series_cutoff(12, 1, 2 * D + 40);
  auto delta = mf::eigen_systems_level1(12, exact::primes_up_to(50), std::max(mf::required_precision(12, 50), n + 1)).at(0);
  const lf::BigFloat bound = lf::power_of_ten(-(D - 10), lf::bits_for_digits(D));
  for (int s = 1; s <= 11; ++s) {
    o.expect(lf::functional_equation_residual(delta, s, D) < bound, "Delta residual at s = " + std::to_string(s));
  }
  auto newform = lf::with_inferred_atkin_lehner(
      trace::rational_newform_system(8, 2, exact::primes_up_to(lf::series_cutoff(8, 2, D + 40))), 30);
  for (int s = 1; s <= 7; ++s) {
    o.expect(lf::functional_equation_residual(newform, s, D) < bound, "level-2 weight-8 residual at s = " + std::to_string(s));
  }

  auto r = lf::ratio_rationalize(delta, 3, 5, D);
  o.expect(r.stable && r.ratio.to_rational() == Rational(14, 9), "Lambda(Delta,3)/Lambda(Delta,5) = 14/9 stably");
  const std::size_t n22 = lf::series_cutoff(22, 1, 2 * D + 40);
  auto s22 = mf::eigen_systems_level1(22, exact::primes_up_to(50), std::max(mf::required_precision(22, 50), n22 + 1)).at(0);
  auto c = lf::candidate_congruence_primes(s22, 4, 10, D);
  o.expect(c.ratio.stable, "weight-22 ratio stable under D -> 2D");
  o.expect(c.primes.size() == 1 && c.primes[0].ell == 41, "weight-22 candidates = {41}");

  // Exclusions: every reported prime exceeds k' and differs from the level.
  for (auto [j, k] : std::vector<std::pair<int, int>>{{2, 4}, {4, 3}}) {
    auto cand = lf::candidate_congruence_primes(newform, j, k, 40);
    for (auto& cp : cand.primes) {
      o.expect(cp.ell > 8 && cp.ell != 2, "level-2 candidate " + cp.ell.get_str() + " passes the exclusions");
    }
  }
  for (auto [j, k] : std::vector<std::pair<int, int>>{{2, 11}, {6, 9}, {8, 8}, {10, 7}, {14, 5}}) {
    auto cand = lf::candidate_congruence_primes(s22, j, k, 40);
    for (auto& cp : cand.primes) {
      o.expect(cp.ell > 22, "weight-22 candidate " + cp.ell.get_str() + " exceeds k'");
    }
  }
  return o;
}

Outcome local_origin() {
  Outcome o;
  auto a = satake::local_origin_rarity(4, 2, exact::ResidueField::standard(5, 1));
  o.expect(a.possible && a.t == 0, "(4, 2, F_5) possible with t = 0");
  auto b = satake::local_origin_rarity(4, 2, exact::ResidueField::standard(41, 1));
  o.expect(!b.possible, "(4, 2, F_41) blocked");
  return o;
}

Outcome congruence_round_trip() {
  Outcome o;
  const auto target = congruence::CongruenceTarget::standard(2, 4, 2);
  const auto f = trace::rational_newform_system(8, 2, exact::primes_up_to(60));
  const std::uint64_t ell = 13;
  auto K = nf::NumberField::create(exact::PolyQ(std::vector<Rational>{-3, 0, 1}));
  const NFElement pi = NFElement::generator(K) - NFElement::from_rational(K, 4);
  const auto split = nf::primes_above(*K, ell).primes;
  const std::size_t want = nf::reduce_mod(pi, split.at(0)).is_zero() ? 0 : 1;

  std::mt19937_64 rng(7);
  mf::EigenSystem F;
  F.weight = target.k;
  F.level = 2;
  F.field = K;
  for (auto& [q, a] : f.values) {
    const Rational twist(ipow_u(q, target.low) + ipow_u(q, target.high));
    F.values.emplace(q, NFElement(K, a.coords()) + NFElement::from_rational(K, twist) +
                            pi * NFElement::from_rational(K, Rational(1 + static_cast<long>(rng() % 12))));
  }
  auto rep = congruence::check_harder(f, F, target, ell, 50);
  o.expect(rep.pairs.size() == 1 && rep.pairs[0].lambda == 0 && rep.pairs[0].Lambda == want,
           "exactly the constructed pair verifies");
  int survived = 0;
  for (auto q : rep.verified_primes) {
    auto G = F;
    G.values[q] = G.values[q] + NFElement::from_rational(K, 1);
    if (!congruence::check_harder(f, G, target, ell, 50).pairs.empty()) ++survived;
  }
  o.expect(survived == 0, std::to_string(survived) + " single-q perturbations went unnoticed");
  o.notes.push_back(std::to_string(rep.verified_primes.size()) + " perturbations tested");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Ramanujan 691 via CLI", 5, ramanujan_691},
      {2, "Bernoulli and zeta criteria", 1, bernoulli_zeta},
      {3, "trace formula against Hecke matrices; class-number relation", 60, trace_oracle},
      {4, "Satake engine against obstruction congruences", 120, satake_equivalence},
      {5, "verdict pipeline via CLI", 5, verdict_pipeline},
      {6, "witness prime", 1, witness},
      {7, "L-function properties at D = 100", 600, lfunction_properties},
      {8, "local-origin rarity", 1, local_origin},
      {9, "congruence checker round trip", 10, congruence_round_trip},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_s) {
      o.ok = false;
      o.notes.push_back("over the time limit");
    }
    if (!o.ok) ++failures;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s of %.0f s", secs, c.limit_s);
    std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " (" << timing << ")";
    for (auto& n : o.notes) std::cout << "; " << n;
    std::cout << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
