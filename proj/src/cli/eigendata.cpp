#include "eiscong/cli/eigendata.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "eiscong/error.hpp"

namespace eiscong::cli {

namespace {

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

int parse_int(const std::string& w, const std::string& where) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(w, &used);
    if (used == w.size()) return v;
  } catch (const std::exception&) {
  }
  throw PreconditionError(where + ": expected an integer, got '" + w + "'");
}

Integer parse_integer(const std::string& w, const std::string& where) {
  Integer v;
  if (w.empty() || v.set_str(w, 10) != 0) throw PreconditionError(where + ": expected an integer, got '" + w + "'");
  return v;
}

std::string format_rational(const Rational& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace

std::string to_string(Role r) { return r == Role::Elliptic ? "elliptic" : "genus2"; }

EigenDataFile parse_eigendata(std::istream& in, const std::string& source) {
  EigenDataFile file;
  std::string line;
  int lineno = 0;
  bool magic = false, have_weight = false, have_level = false, have_role = false, have_minpoly = false;
  std::size_t rowno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = source + ":" + std::to_string(lineno);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!magic) {
      if (line != "# eigendata v1") throw PreconditionError(where + ": missing '# eigendata v1' header");
      magic = true;
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    auto w = words(line);
    if (w.empty()) continue;
    if (w[0] == "q=") {
      ++rowno;
      require(have_minpoly, where + ": row before minpoly");
      const std::string rw = where + " (row " + std::to_string(rowno) + ")";
      if (w.size() < 3 || w[2] != ":") throw PreconditionError(rw + ": expected 'q= <prime> : <coords>'");
      const Integer qz = parse_integer(w[1], rw);
      if (qz < 2 || !qz.fits_ulong_p() || !exact::is_prime(qz)) throw PreconditionError(rw + ": q = " + w[1] + " is not prime");
      const std::uint64_t q = qz.get_ui();
      if (!file.rows.empty() && q <= file.rows.back().first) {
        throw PreconditionError(rw + ": q values must be strictly increasing");
      }
      const std::size_t d = file.minpoly.size() - 1;
      if (w.size() - 3 != d) {
        throw PreconditionError(rw + ": expected " + std::to_string(d) + " coordinates, got " + std::to_string(w.size() - 3));
      }
      std::vector<Rational> coords;
      for (std::size_t i = 3; i < w.size(); ++i) {
        try {
          coords.push_back(exact::parse_rational(w[i]));
        } catch (const std::exception& e) {
          throw PreconditionError(rw + ": " + e.what());
        }
      }
      file.rows.emplace_back(q, std::move(coords));
    } else if (w[0] == "weight" && w.size() == 2) {
      file.weight = parse_int(w[1], where);
      have_weight = true;
    } else if (w[0] == "level" && w.size() == 2) {
      file.level = parse_int(w[1], where);
      have_level = true;
    } else if (w[0] == "role" && w.size() == 2) {
      if (w[1] == "elliptic") file.role = Role::Elliptic;
      else if (w[1] == "genus2") file.role = Role::Genus2;
      else throw PreconditionError(where + ": role must be elliptic or genus2");
      have_role = true;
    } else if (w[0] == "minpoly" && w.size() >= 3) {
      file.minpoly.clear();
      for (std::size_t i = 1; i < w.size(); ++i) file.minpoly.push_back(parse_integer(w[i], where));
      if (file.minpoly.back() != 1) throw PreconditionError(where + ": minpoly must be monic");
      have_minpoly = true;
    } else {
      throw PreconditionError(where + ": unrecognized line '" + line + "'");
    }
  }
  require(magic, source + ": empty file");
  require(have_weight, source + ": missing weight");
  require(have_level, source + ": missing level");
  require(have_role, source + ": missing role");
  require(have_minpoly, source + ": missing minpoly");
  require(!file.rows.empty(), source + ": no eigenvalues");
  return file;
}

void write_eigendata(std::ostream& out, const EigenDataFile& file) {
  out << "# eigendata v1\n";
  out << "weight " << file.weight << "\n";
  out << "level " << file.level << "\n";
  out << "role " << to_string(file.role) << "\n";
  out << "minpoly";
  for (auto& c : file.minpoly) out << ' ' << c.get_str();
  out << "\n\n";
  for (auto& [q, coords] : file.rows) {
    out << "q= " << q << " :";
    for (auto& c : coords) out << ' ' << format_rational(c);
    out << "\n";
  }
}

mf::EigenSystem to_system(const EigenDataFile& file) {
  std::vector<Rational> mp;
  for (auto& c : file.minpoly) mp.emplace_back(c);
  mf::EigenSystem sys;
  sys.weight = file.weight;
  sys.level = file.level;
  sys.field = mp.size() == 2 && mp[0] == 0 ? nf::NumberField::rationals() : nf::NumberField::create(exact::PolyQ(mp));
  for (auto& [q, coords] : file.rows) {
    if (file.level > 1 && q == static_cast<std::uint64_t>(file.level)) continue;
    sys.values.emplace(q, nf::NFElement(sys.field, coords));
  }
  return sys;
}

EigenDataFile from_system(const mf::EigenSystem& sys, Role role) {
  EigenDataFile file;
  file.weight = sys.weight;
  file.level = sys.level;
  file.role = role;
  for (auto& c : sys.field->minpoly().coeffs()) {
    require(c.get_den() == 1, "minimal polynomial has non-integral coefficients");
    file.minpoly.push_back(c.get_num());
  }
  for (auto& [q, v] : sys.values) file.rows.emplace_back(q, v.coords());
  return file;
}

mf::EigenSystem ingest_eigen_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open " + path);
  return to_system(parse_eigendata(in, path));
}

void write_eigen_file(const std::string& path, const mf::EigenSystem& sys, Role role) {
  std::ofstream out(path);
  if (!out) throw ComputationError("cannot write " + path);
  write_eigendata(out, from_system(sys, role));
}

}  // namespace eiscong::cli
