#include "eiscong/cli/app.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "eiscong/cli/eigendata.hpp"
#include "eiscong/congruence/congruence.hpp"
#include "eiscong/error.hpp"
#include "eiscong/exactmath/bernoulli.hpp"
#include "eiscong/lfunction/lfunction.hpp"
#include "eiscong/satake/satake.hpp"
#include "eiscong/traceformula/traceformula.hpp"

namespace eiscong::cli {

void RunConfig::set(const std::string& key, const std::string& value) {
  for (auto& kv : params) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  params.emplace_back(key, value);
}

namespace {

/// Result lines of one run. Structured output prints every key; text output
/// prints the human-readable lines.
class Report {
 public:
  void add(const std::string& key, const std::string& value) {
    keyed_.emplace_back(key, value);
    text_.push_back(key + ": " + value);
  }
  /// A result whose text rendering is just the value.
  void headline(const std::string& key, const std::string& value) {
    keyed_.emplace_back(key, value);
    text_.push_back(value);
  }

  void render(std::ostream& out, const RunConfig& cfg) const {
    if (cfg.format == Format::Structured) {
      out << "config.command: " << cfg.command << "\n";
      for (auto& [k, v] : cfg.params) out << "config." << k << ": " << v << "\n";
      for (auto& [k, v] : keyed_) out << k << ": " << v << "\n";
      return;
    }
    out << "# " << cfg.command;
    for (auto& [k, v] : cfg.params) out << ' ' << k << '=' << v;
    out << "\n";
    for (auto& line : text_) out << line << "\n";
  }

 private:
  std::vector<std::pair<std::string, std::string>> keyed_;
  std::vector<std::string> text_;
};

template <class T>
std::string str(const T& v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

std::string join(const std::vector<std::string>& items, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

template <class T>
std::string join_values(const std::vector<T>& items) {
  std::vector<std::string> s;
  for (auto& i : items) s.push_back(str(i));
  return s.empty() ? "none" : join(s);
}

void require_prime(std::uint64_t v, const std::string& name) {
  require(v >= 2 && exact::is_prime(v), name + " must be prime (got " + std::to_string(v) + ")");
}

std::vector<std::uint64_t> primes_to(std::uint64_t n) { return exact::primes_up_to(n); }

/// Source of an elliptic eigen system: an eigendata file or generated data.
struct SystemSource {
  std::string input;
  int weight = 0;
  std::uint64_t level = 1;
  std::size_t orbit = 0;

  void bind(CLI::App* sub, bool with_weight = true) {
    sub->add_option("--input", input, "eigendata v1 file");
    if (with_weight) sub->add_option("--weight", weight, "weight of generated data");
    sub->add_option("--level", level, "1 or a prime (generated data)");
    sub->add_option("--orbit", orbit, "Galois orbit index (generated level-1 data)");
  }

  void record(RunConfig& cfg) const {
    if (!input.empty()) {
      cfg.set("input", input);
      return;
    }
    cfg.set("weight", std::to_string(weight));
    cfg.set("level", std::to_string(level));
    cfg.set("orbit", std::to_string(orbit));
  }

  void validate() const {
    if (!input.empty()) return;
    require(weight >= 2 && weight % 2 == 0, "weight must be even and positive");
    require(level == 1 || exact::is_prime(level), "level must be 1 or prime");
  }

  /// a_q for all primes q <= max_prime and, at level 1, the expansion up
  /// to n_max.
  mf::EigenSystem load(std::uint64_t max_prime, std::size_t n_max) const {
    if (!input.empty()) return ingest_eigen_file(input);
    if (level == 1) {
      auto systems = mf::eigen_systems_level1(weight, primes_to(max_prime),
                                              std::max(mf::required_precision(weight, max_prime), n_max + 1));
      require(!systems.empty(), "no cusp forms of weight " + std::to_string(weight));
      require(orbit < systems.size(), "orbit index out of range (" + std::to_string(systems.size()) + " orbits)");
      return systems[orbit];
    }
    return trace::rational_newform_system(weight, level, primes_to(std::max<std::uint64_t>(max_prime, n_max)));
  }
};

/// Level-p systems read without a_p get their Atkin-Lehner sign inferred.
mf::EigenSystem prepared_for_lvalues(mf::EigenSystem sys, int digits) {
  if (sys.level > 1 && !sys.has(static_cast<std::uint64_t>(sys.level))) {
    sys = lf::with_inferred_atkin_lehner(sys, std::min(digits, 30));
  }
  return sys;
}

struct Options {
  int j = 0, k = 0, e = 1, f = 1, digits = 30, s = 0;
  unsigned bern_k = 0;
  std::uint64_t p = 0, ell = 0, q = 0, qmax = 50;
  std::vector<std::uint64_t> sigma;
  std::optional<int> reference;
  std::size_t embedding = 0;
  std::string source = "level-p";
  std::string write_path, elliptic_path, genus2_path;
  bool charpoly = false;
  SystemSource sys;
};

using Handler = std::function<void(Options&, RunConfig&, Report&, unsigned jobs)>;

void cmd_bernoulli(Options& o, RunConfig& cfg, Report& rep, unsigned) {
  cfg.set("k", std::to_string(o.bern_k));
  rep.headline("value", exact::to_string(exact::bernoulli(o.bern_k)));
}

void cmd_zeta_primes(Options& o, RunConfig& cfg, Report& rep, unsigned) {
  cfg.set("weight", std::to_string(o.sys.weight));
  cfg.set("sigma", join_values(o.sigma));
  require(o.sys.weight >= 2 && o.sys.weight % 2 == 0, "weight must be even and at least 2");
  std::vector<Integer> sigma;
  for (auto p : o.sigma) {
    require_prime(p, "sigma entry");
    sigma.emplace_back(static_cast<unsigned long>(p));
  }
  auto scan = lf::zeta_sigma_primes(static_cast<unsigned>(o.sys.weight), sigma);
  std::vector<std::string> ps;
  for (auto& p : scan.primes) ps.push_back(p.get_str());
  rep.headline("primes", ps.empty() ? "none" : join(ps));
  if (scan.unfactored != 1) rep.add("unfactored", scan.unfactored.get_str());
}

void cmd_eigenforms(Options& o, RunConfig& cfg, Report& rep, unsigned) {
  o.sys.record(cfg);
  cfg.set("qmax", std::to_string(o.qmax));
  if (!o.write_path.empty()) cfg.set("write", o.write_path);
  o.sys.validate();
  require(o.sys.input.empty(), "eigenforms generates data; --input is not accepted");
  std::vector<mf::EigenSystem> systems;
  if (o.sys.level == 1) {
    systems = mf::eigen_systems_level1(o.sys.weight, primes_to(o.qmax), mf::required_precision(o.sys.weight, o.qmax));
  } else {
    systems.push_back(trace::rational_newform_system(o.sys.weight, o.sys.level, primes_to(o.qmax)));
  }
  rep.add("orbits", std::to_string(systems.size()));
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const auto& s = systems[i];
    const std::string pre = "orbit." + std::to_string(i) + ".";
    rep.add(pre + "degree", std::to_string(s.field->degree()));
    rep.add(pre + "minpoly", s.field->minpoly().to_string());
    for (auto& [q, v] : s.values) rep.add(pre + "a" + std::to_string(q), v.to_string());
  }
  if (!o.write_path.empty()) {
    require(o.sys.orbit < systems.size(), "orbit index out of range");
    write_eigen_file(o.write_path, systems[o.sys.orbit], Role::Elliptic);
    rep.add("written", o.write_path);
  }
}

void cmd_newform_charpoly(Options& o, RunConfig& cfg, Report& rep, unsigned) {
  cfg.set("weight", std::to_string(o.sys.weight));
  cfg.set("p", std::to_string(o.p));
  cfg.set("q", std::to_string(o.q));
  require(o.sys.weight >= 2 && o.sys.weight % 2 == 0, "weight must be even");
  require_prime(o.p, "p");
  require_prime(o.q, "q");
  require(o.q != o.p, "q must differ from p");
  auto cp = trace::charpoly_tq_new(o.sys.weight, o.p, o.q);
  rep.add("dimension", std::to_string(cp.poly.degree()));
  rep.headline("charpoly", cp.poly.to_string());
}

void cmd_lvalue(Options& o, RunConfig& cfg, Report& rep, unsigned) {
  o.sys.record(cfg);
  cfg.set("s", std::to_string(o.s));
  cfg.set("digits", std::to_string(o.digits));
  cfg.set("embedding", std::to_string(o.embedding));
  o.sys.validate();
  require(o.digits >= 10, "digits must be at least 10");
  if (o.sys.input.empty()) require(o.s >= 1 && o.s < o.sys.weight, "s must be critical: 1 <= s <= weight - 1");
  const auto n = lf::series_cutoff(std::max(o.sys.weight, 2), o.sys.level, o.digits);
  auto sys = prepared_for_lvalues(o.sys.load(50, n), o.digits);
  auto v = lf::lambda_value(sys, o.s, o.digits, o.embedding);
  rep.add("weight", std::to_string(v.weight));
  rep.add("level", std::to_string(v.level));
  rep.add("sign", std::to_string(v.sign));
  rep.add("terms", std::to_string(v.terms));
  rep.headline("lambda", v.value.to_string(o.digits));
  rep.add("fe_residual", lf::functional_equation_residual(sys, o.s, o.digits, o.embedding).to_string(5));
}

void cmd_critical_primes(Options& o, RunConfig& cfg, Report& rep, unsigned) {
  cfg.set("j", std::to_string(o.j));
  cfg.set("k", std::to_string(o.k));
  if (o.sys.input.empty()) o.sys.weight = o.j + 2 * o.k - 2;
  o.sys.record(cfg);
  cfg.set("digits", std::to_string(o.digits));
  cfg.set("reference", o.reference ? std::to_string(*o.reference) : "auto");
  o.sys.validate();
  require(o.j >= 0 && o.j % 2 == 0, "j must be even and non-negative");
  require(o.k >= 3, "k must be at least 3");
  require(o.digits >= 20, "digits must be at least 20");
  const auto n = lf::series_cutoff(o.j + 2 * o.k - 2, o.sys.level, 2 * o.digits + 40);
  auto sys = prepared_for_lvalues(o.sys.load(50, n), o.digits);
  auto c = lf::candidate_congruence_primes(sys, o.j, o.k, o.digits, o.reference);
  rep.add("reference", std::to_string(c.reference));
  rep.add("ratio", c.ratio.ratio.to_string());
  rep.add("residual", c.ratio.residual.to_string(5));
  rep.add("stable", c.ratio.stable ? "yes" : "no");
  std::vector<std::string> ps;
  for (auto& cp : c.primes) ps.push_back(cp.ell.get_str());
  rep.headline("candidates", ps.empty() ? "none" : join(ps));
  rep.add("flag", lf::kCandidateFlag);
  if (c.unfactored != 1) rep.add("unfactored", c.unfactored.get_str());
}

satake::TargetSource parse_source(const std::string& s) {
  if (s == "level-p") return satake::TargetSource::LevelPNewform;
  if (s == "local-origin") return satake::TargetSource::Level1LocalOrigin;
  throw PreconditionError("source must be level-p or local-origin");
}

std::string quadruple_string(const satake::SatakeQuadruple& t) {
  std::vector<std::string> e;
  for (auto& x : t.entries) e.push_back(x.to_string());
  return "[" + join(e, ", ") + "]";
}

void cmd_satake_filter(Options& o, RunConfig& cfg, Report& rep, unsigned) {
  for (auto [k, v] : {std::pair{"j", o.j}, {"k", o.k}, {"f", o.f}}) cfg.set(k, std::to_string(v));
  cfg.set("p", std::to_string(o.p));
  cfg.set("ell", std::to_string(o.ell));
  cfg.set("source", o.source);
  const auto source = parse_source(o.source);
  require_prime(o.p, "p");
  require_prime(o.ell, "ell");
  require(o.f >= 1 && o.f <= 8, "f must be between 1 and 8");
  const auto F = exact::ResidueField::standard(o.ell, o.f);
  const auto targets = satake::target_quadruple(o.j, o.k, o.p, source, F);
  for (auto& t : targets) {
    const std::string tag = t.sign > 0 ? "+" : t.sign < 0 ? "-" : "0";
    rep.add("target[" + tag + "]", quadruple_string(t));
  }
  std::vector<std::string> admissible;
  for (const auto& r : satake::representation_table()) {
    std::string verdict = "impossible";
    for (auto& t : targets) {
      auto m = satake::type_match(r, t);
      if (m.possible) {
        verdict = "possible (" + m.witness + ")";
        break;
      }
    }
    if (verdict != "impossible") admissible.push_back(r.type_id);
    rep.add("type." + r.type_id, verdict);
  }
  rep.add("admissible", join_values(admissible));
  if (source == satake::TargetSource::LevelPNewform) {
    for (auto family : {"III", "IV", "V", "VI"}) {
      std::vector<std::string> conds;
      for (auto& ob : satake::obstruction_congruences(family, o.j)) {
        const bool holds = std::any_of(targets.begin(), targets.end(), [&](auto& t) { return ob.holds(o.p, F, t.sign); });
        conds.push_back(ob.to_string() + (holds ? " [holds]" : ""));
      }
      rep.add(std::string("obstructions.") + family, join(conds, "; "));
    }
  }
}

void cmd_local_origin(Options& o, RunConfig& cfg, Report& rep, unsigned) {
  cfg.set("j", std::to_string(o.j));
  cfg.set("p", std::to_string(o.p));
  cfg.set("ell", std::to_string(o.ell));
  cfg.set("f", std::to_string(o.f));
  require_prime(o.p, "p");
  require_prime(o.ell, "ell");
  require(o.f >= 1 && o.f <= 8, "f must be between 1 and 8");
  auto r = satake::local_origin_rarity(o.j, o.p, exact::ResidueField::standard(o.ell, o.f));
  rep.headline("result", r.possible ? "possible (t = " + std::to_string(r.t) + ")" : "blocked");
}

void cmd_witness_prime(Options& o, RunConfig& cfg, Report& rep, unsigned) {
  cfg.set("ell", std::to_string(o.ell));
  cfg.set("f", std::to_string(o.f));
  require_prime(o.ell, "ell");
  require(o.f >= 1, "f must be positive");
  rep.headline("witness", std::to_string(satake::witness_prime(o.ell, o.f)));
}

void cmd_harder_check(Options& o, RunConfig& cfg, Report& rep, unsigned jobs) {
  cfg.set("elliptic", o.elliptic_path);
  cfg.set("genus2", o.genus2_path);
  for (auto [k, v] : {std::pair{"j", o.j}, {"k", o.k}}) cfg.set(k, std::to_string(v));
  cfg.set("p", std::to_string(o.p));
  cfg.set("ell", std::to_string(o.ell));
  cfg.set("qmax", std::to_string(o.qmax));
  cfg.set("charpoly", o.charpoly ? "yes" : "no");
  const auto target = congruence::CongruenceTarget::standard(o.j, o.k, o.p);
  require_prime(o.ell, "ell");
  const auto f = ingest_eigen_file(o.elliptic_path);
  const auto F = ingest_eigen_file(o.genus2_path);
  auto r = congruence::check_harder(f, F, target, o.ell, o.qmax, jobs);
  std::vector<std::string> pairs;
  for (auto& pr : r.pairs) {
    pairs.push_back("(" + std::to_string(pr.lambda) + "," + std::to_string(pr.Lambda) + ";" + std::to_string(pr.embedding) + ")");
  }
  rep.add("pairs", pairs.empty() ? "none" : join(pairs));
  rep.add("verified_up_to", std::to_string(o.qmax));
  rep.add("tested_primes", join_values(r.verified_primes));
  for (auto& fl : r.failures) {
    rep.add("failure(" + std::to_string(fl.lambda) + "," + std::to_string(fl.Lambda) + ").q" + std::to_string(fl.q), fl.gap);
  }
  if (r.saito_kurokawa_regime) rep.add("regime", "Saito-Kurokawa");
  rep.headline("result", r.pairs.empty() ? "no congruent pair up to qmax" : "congruent pair(s) verified up to qmax");
  if (o.charpoly) {
    std::map<std::uint64_t, exact::PolyQ> cps;
    for (auto q : r.verified_primes) cps[q] = trace::charpoly_tq_new(target.elliptic_weight(), o.p, q).poly;
    for (auto& c : congruence::charpoly_compat(F, cps, target, o.ell, r.verified_primes)) {
      rep.add("charpoly_compat." + std::to_string(c.Lambda),
              std::string(c.compatible ? "yes" : "no (q = " + std::to_string(c.first_failure) + ")") + " - " +
                  congruence::kCharpolyCompatNote);
    }
  }
}

void cmd_ramanujan_check(Options& o, RunConfig& cfg, Report& rep, unsigned) {
  o.sys.record(cfg);
  cfg.set("ell", std::to_string(o.ell));
  cfg.set("qmax", std::to_string(o.qmax));
  o.sys.validate();
  require_prime(o.ell, "ell");
  auto sys = o.sys.load(o.qmax, 0);
  bool any = false;
  for (auto& r : congruence::check_ramanujan(sys, o.ell, o.qmax)) {
    any = any || r.holds;
    rep.add("lambda." + std::to_string(r.lambda),
            r.holds ? "holds" : "fails at q = " + std::to_string(r.first_failure));
  }
  rep.headline("result", any ? "congruence holds up to qmax" : "no congruence");
}

void cmd_verdict(Options& o, RunConfig& cfg, Report& rep, unsigned) {
  for (auto [k, v] : {std::pair{"j", o.j}, {"k", o.k}, {"e", o.e}, {"f", o.f}}) cfg.set(k, std::to_string(v));
  cfg.set("p", std::to_string(o.p));
  cfg.set("ell", std::to_string(o.ell));
  require_prime(o.p, "p");
  require_prime(o.ell, "ell");
  auto v = satake::verdict(o.j, o.k, o.p, o.ell, o.e, o.f);
  rep.add("borel_guard", v.borel_guard ? "pass" : "fail");
  if (v.borel_guard) {
    for (int t = 0; t < 4; ++t) {
      rep.add("power_condition.t" + std::to_string(t),
              std::string(v.power_conditions[static_cast<std::size_t>(t)] ? "pass" : "fail") + " (p^" +
                  std::to_string(o.j + 2 * t - 2) + " != 1)");
    }
    rep.add("bernoulli_valuation", std::to_string(v.bernoulli_valuation));
    rep.add("admissible_types", join_values(v.admissible_types));
    for (auto& [type, w] : v.witnesses) rep.add("witness." + type, w);
  }
  rep.add("conclusion", satake::to_string(v.conclusion));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eisenstein-type congruences between genus-2 and elliptic eigenforms", "eiscong"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text", output;
  unsigned jobs = 1;
  app.add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--output", output, "write the report here instead of stdout");
  app.add_option("--jobs", jobs, "worker threads for parallel sweeps")->check(CLI::Range(1u, 256u));

  Options o;
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto sub = [&](const char* name, const char* help, Handler h) {
    auto* s = app.add_subcommand(name, help);
    commands.emplace_back(s, std::move(h));
    return s;
  };
  auto jk = [&](CLI::App* s) {
    s->add_option("--j", o.j)->required();
    s->add_option("--k", o.k)->required();
  };

  auto* b = sub("bernoulli", "exact Bernoulli number B_k", cmd_bernoulli);
  b->add_option("k", o.bern_k)->required();

  auto* z = sub("zeta-primes", "primes > 3 dividing B_k/2k times Euler factors", cmd_zeta_primes);
  z->add_option("--weight", o.sys.weight)->required();
  z->add_option("--sigma", o.sigma)->delimiter(',');

  auto* ef = sub("eigenforms", "Hecke eigen systems of level 1 or rational level-p newforms", cmd_eigenforms);
  o.sys.bind(ef);
  ef->get_option("--weight")->required();
  ef->add_option("--qmax", o.qmax);
  ef->add_option("--write", o.write_path, "write the chosen orbit as eigendata v1");

  auto* nc = sub("newform-charpoly", "characteristic polynomial of T_q on the level-p new space", cmd_newform_charpoly);
  nc->add_option("--weight", o.sys.weight)->required();
  nc->add_option("--p", o.p)->required();
  nc->add_option("--q", o.q)->required();

  auto* lv = sub("lvalue", "completed L-value at a critical point", cmd_lvalue);
  o.sys.bind(lv);
  lv->add_option("--s", o.s)->required();
  lv->add_option("--digits", o.digits);
  lv->add_option("--embedding", o.embedding);

  auto* cr = sub("critical-primes", "candidate congruence primes from critical L-value ratios", cmd_critical_primes);
  jk(cr);
  o.sys.bind(cr, false);
  cr->add_option("--digits", o.digits);
  cr->add_option("--reference", o.reference);

  auto* sf = sub("satake-filter", "mod-ell matching of Satake parameters against representation types", cmd_satake_filter);
  jk(sf);
  sf->add_option("--p", o.p)->required();
  sf->add_option("--ell", o.ell)->required();
  sf->add_option("--f", o.f);
  sf->add_option("--source", o.source)->check(CLI::IsMember({"level-p", "local-origin"}));

  auto* lo = sub("local-origin", "whether p^{j+2t} == 1 for some t in 0..3", cmd_local_origin);
  lo->add_option("--j", o.j)->required();
  lo->add_option("--p", o.p)->required();
  lo->add_option("--ell", o.ell)->required();
  lo->add_option("--f", o.f);

  auto* wp = sub("witness-prime", "smallest auxiliary prime l' for the Borel argument", cmd_witness_prime);
  wp->add_option("--ell", o.ell)->required();
  wp->add_option("--f", o.f);

  auto* hc = sub("harder-check", "test b_q == q^{k-2} + a_q + q^{j+k-1} on ingested data", cmd_harder_check);
  hc->add_option("--elliptic", o.elliptic_path)->required();
  hc->add_option("--genus2", o.genus2_path)->required();
  jk(hc);
  hc->add_option("--p", o.p)->required();
  hc->add_option("--ell", o.ell)->required();
  hc->add_option("--qmax", o.qmax);
  hc->add_flag("--charpoly", o.charpoly, "also test against new-space characteristic polynomials");

  auto* rc = sub("ramanujan-check", "test a_q == 1 + q^{k-1} mod primes above ell", cmd_ramanujan_check);
  o.sys.bind(rc);
  rc->add_option("--ell", o.ell)->required();
  rc->add_option("--qmax", o.qmax);

  auto* vd = sub("verdict", "local type at p of a congruent genus-2 form", cmd_verdict);
  jk(vd);
  vd->add_option("--p", o.p)->required();
  vd->add_option("--ell", o.ell)->required();
  vd->add_option("--e", o.e);
  vd->add_option("--f", o.f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  RunConfig cfg;
  cfg.format = format == "structured" ? Format::Structured : Format::Text;
  Report rep;
  try {
    for (auto& [s, h] : commands) {
      if (!s->parsed()) continue;
      cfg.command = s->get_name();
      cfg.set("jobs", std::to_string(jobs));
      if (!output.empty()) cfg.set("output", output);
      h(o, cfg, rep, jobs);
    }
    if (!output.empty()) {
      std::ofstream file(output);
      if (!file) throw ComputationError("cannot write " + output);
      rep.render(file, cfg);
    } else {
      rep.render(out, cfg);
    }
  } catch (const PreconditionError& e) {
    Report().render(err, cfg);
    err << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    Report().render(err, cfg);
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace eiscong::cli
