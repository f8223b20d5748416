#include "eiscong/congruence/congruence.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include "eiscong/error.hpp"
#include "eiscong/exactmath/bernoulli.hpp"
#include "eiscong/exactmath/finite_field.hpp"
#include "eiscong/numberfield/numberfield.hpp"

namespace eiscong::congruence {

using exact::FFElement;
using exact::ResidueField;
using exact::ResidueFieldPtr;

namespace {

std::vector<std::uint64_t> tested_primes(std::uint64_t qmax, std::uint64_t p, std::uint64_t ell) {
  std::vector<std::uint64_t> out;
  for (auto q : exact::primes_up_to(qmax)) {
    if (q != p && q != ell) out.push_back(q);
  }
  return out;
}

void require_values(const EigenSystem& sys, const std::vector<std::uint64_t>& qs, const std::string& what) {
  for (auto q : qs) {
    if (!sys.has(q)) {
      throw PreconditionError("missing eigenvalue " + what + " at q = " + std::to_string(q));
    }
  }
}

void require_prime_ell(std::uint64_t ell) {
  require(ell >= 2 && exact::is_prime(ell), "ell must be prime (got " + std::to_string(ell) + ")");
}

FFElement int_in(const ResidueFieldPtr& F, std::uint64_t q, int e) {
  return FFElement::from_integer(F, Integer(static_cast<unsigned long>(exact::powmod(q % F->ell(), static_cast<std::uint64_t>(e), F->ell()))));
}

/// Reductions of the listed eigenvalues at every prime above ell.
struct Reduced {
  nf::PrimeIdeal prime;
  std::vector<FFElement> values;  // parallel to the tested primes
};

std::vector<Reduced> reduce_all(const EigenSystem& sys, std::uint64_t ell, const std::vector<std::uint64_t>& qs) {
  std::vector<Reduced> out;
  for (auto& P : nf::primes_above(*sys.field, ell).primes) {
    Reduced r{P, {}};
    for (auto q : qs) r.values.push_back(nf::reduce_mod(sys.at(q), P));
    out.push_back(std::move(r));
  }
  return out;
}

struct PairOutcome {
  bool ok = false;
  std::size_t embedding = 0;
  std::vector<CongruenceFailure> failures;
};

PairOutcome test_pair(const Reduced& lam, const Reduced& Lam, std::size_t li, std::size_t Li,
                      const std::vector<std::uint64_t>& qs, const CongruenceTarget& target) {
  const std::uint64_t ell = lam.prime.ell;
  const int fl = lam.prime.residue->degree(), fL = Lam.prime.residue->degree();
  const auto E = ResidueField::standard(ell, std::lcm(fl, fL));
  const FFElement psi = exact::roots_in(Lam.prime.residue->modulus(), E).front();
  const auto phis = exact::roots_in(lam.prime.residue->modulus(), E);

  // What a_q has to be in E for the congruence to hold at q.
  std::vector<FFElement> wanted;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    wanted.push_back(exact::embed_into(Lam.values[i], psi) - int_in(E, qs[i], target.low) - int_in(E, qs[i], target.high));
  }
  auto failures_for = [&](std::size_t e) {
    std::vector<CongruenceFailure> out;
    for (std::size_t i = 0; i < qs.size(); ++i) {
      FFElement gap = wanted[i] - exact::embed_into(lam.values[i], phis[e]);
      if (!gap.is_zero()) out.push_back({li, Li, qs[i], gap.to_string()});
    }
    return out;
  };

  std::vector<std::size_t> candidates(phis.size());
  std::iota(candidates.begin(), candidates.end(), 0);
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (lam.values[i].minimal_polynomial().degree() != fl) continue;
    // a_q generates: at most one embedding can match here.
    std::vector<std::size_t> pinned;
    for (auto e : candidates) {
      if (exact::embed_into(lam.values[i], phis[e]) == wanted[i]) pinned.push_back(e);
    }
    if (!pinned.empty()) candidates = pinned;
    else candidates = {0};
    break;
  }
  PairOutcome best;
  bool first = true;
  for (auto e : candidates) {
    auto fails = failures_for(e);
    if (first || fails.size() < best.failures.size()) {
      best.embedding = e;
      best.failures = std::move(fails);
      first = false;
    }
    if (best.failures.empty()) break;
  }
  best.ok = best.failures.empty();
  return best;
}

}  // namespace

CongruenceTarget CongruenceTarget::standard(int j, int k, std::uint64_t p) {
  require(j > 0, "j must be positive (j = 0 is the Saito-Kurokawa case)");
  require(j % 2 == 0, "j must be even");
  require(k >= 3, "k must be at least 3");
  require(exact::is_prime(p), "p must be prime");
  return CongruenceTarget{j, k, p, k - 2, j + k - 1};
}

CongruenceReport check_harder(const EigenSystem& f_sys, const EigenSystem& F_sys, const CongruenceTarget& target,
                              std::uint64_t ell, std::uint64_t qmax, unsigned jobs) {
  if (!target.degenerate()) require(target.j > 0, "j must be positive (j = 0 is the Saito-Kurokawa case)");
  require(target.k >= 3, "k must be at least 3");
  require_prime_ell(ell);
  require(ell != target.p, "ell must differ from p");
  require(f_sys.weight == target.elliptic_weight(),
          "elliptic weight " + std::to_string(f_sys.weight) + " != j + 2k - 2 = " + std::to_string(target.elliptic_weight()));

  CongruenceReport report;
  report.ell = ell;
  report.qmax = qmax;
  report.saito_kurokawa_regime = target.degenerate();
  report.verified_primes = tested_primes(qmax, target.p, ell);
  const auto& qs = report.verified_primes;
  require(!qs.empty(), "no primes to test below qmax");
  require_values(f_sys, qs, "a_q");
  require_values(F_sys, qs, "b_q");

  const auto lams = reduce_all(f_sys, ell, qs);
  const auto Lams = reduce_all(F_sys, ell, qs);
  std::vector<std::pair<std::size_t, std::size_t>> work;
  for (std::size_t a = 0; a < lams.size(); ++a) {
    for (std::size_t b = 0; b < Lams.size(); ++b) work.emplace_back(a, b);
  }
  std::vector<PairOutcome> outcomes(work.size());
  auto run = [&](std::size_t i) {
    outcomes[i] = test_pair(lams[work[i].first], Lams[work[i].second], work[i].first, work[i].second, qs, target);
  };
  if (jobs <= 1 || work.size() <= 1) {
    for (std::size_t i = 0; i < work.size(); ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(work.size()));
    for (unsigned t = 0; t < n; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < work.size(); i = next++) run(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (outcomes[i].ok) {
      report.pairs.push_back({work[i].first, work[i].second, outcomes[i].embedding});
    } else {
      report.failures.insert(report.failures.end(), outcomes[i].failures.begin(), outcomes[i].failures.end());
    }
  }
  return report;
}

std::vector<RamanujanResult> check_ramanujan(const EigenSystem& f_sys, std::uint64_t ell, std::uint64_t qmax) {
  require_prime_ell(ell);
  const std::uint64_t p = f_sys.level > 1 ? static_cast<std::uint64_t>(f_sys.level) : 0;
  require(ell != p, "ell must differ from the level");
  const auto qs = tested_primes(qmax, p, ell);
  require_values(f_sys, qs, "a_q");
  std::vector<RamanujanResult> out;
  const auto lams = reduce_all(f_sys, ell, qs);
  for (std::size_t li = 0; li < lams.size(); ++li) {
    RamanujanResult r{li, true, 0};
    const auto& F = lams[li].prime.residue;
    for (std::size_t i = 0; i < qs.size(); ++i) {
      if (lams[li].values[i] != FFElement::from_integer(F, 1) + int_in(F, qs[i], f_sys.weight - 1)) {
        r.holds = false;
        r.first_failure = qs[i];
        break;
      }
    }
    out.push_back(r);
  }
  return out;
}

int bernoulli_criterion(int kprime, std::uint64_t p, std::uint64_t ell) {
  require(kprime >= 4 && kprime % 2 == 0, "k' must be even and at least 4");
  require(exact::is_prime(p), "p must be prime");
  require_prime_ell(ell);
  const auto z = exact::zeta_quantity(static_cast<unsigned>(kprime), {Integer(static_cast<unsigned long>(p))});
  return exact::ord_at(z, Integer(static_cast<unsigned long>(ell)));
}

std::vector<CharpolyCompatResult> charpoly_compat(const EigenSystem& F_sys, const std::map<std::uint64_t, PolyQ>& cp,
                                                  const CongruenceTarget& target, std::uint64_t ell,
                                                  const std::vector<std::uint64_t>& qset) {
  require_prime_ell(ell);
  std::vector<std::uint64_t> qs;
  for (auto q : qset) {
    if (q == target.p || q == ell) continue;
    if (!cp.count(q)) throw PreconditionError("missing characteristic polynomial for q = " + std::to_string(q));
    qs.push_back(q);
  }
  require_values(F_sys, qs, "b_q");
  std::vector<CharpolyCompatResult> out;
  const auto Lams = reduce_all(F_sys, ell, qs);
  for (std::size_t Li = 0; Li < Lams.size(); ++Li) {
    CharpolyCompatResult r{Li, true, 0};
    const auto& F = Lams[Li].prime.residue;
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const FFElement x = Lams[Li].values[i] - int_in(F, qs[i], target.low) - int_in(F, qs[i], target.high);
      const auto poly = exact::reduce_mod(cp.at(qs[i]), ell);
      FFElement acc = FFElement::from_integer(F, 0);
      for (auto it = poly.coeffs().rbegin(); it != poly.coeffs().rend(); ++it) {
        acc = acc * x + FFElement::from_integer(F, Integer(static_cast<unsigned long>(*it)));
      }
      if (!acc.is_zero()) {
        r.compatible = false;
        r.first_failure = qs[i];
        break;
      }
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace eiscong::congruence
