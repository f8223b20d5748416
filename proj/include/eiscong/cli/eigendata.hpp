#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "eiscong/exactmath/integer.hpp"
#include "eiscong/modforms/modforms.hpp"

namespace eiscong::cli {

using exact::Integer;
using exact::Rational;

enum class Role { Elliptic, Genus2 };

std::string to_string(Role r);

/// Parsed contents of an eigendata v1 file:
///
///   # eigendata v1
///   weight <int>
///   level <int>
///   role <elliptic|genus2>
///   minpoly <c0> <c1> ... <cd>
///
///   q= <prime> : <r0> ... <r_{d-1}>
///
/// Coordinates are in the power basis of a root of minpoly; rationals are
/// written num/den. Other lines starting with # are comments.
struct EigenDataFile {
  int weight = 0;
  int level = 1;
  Role role = Role::Elliptic;
  std::vector<Integer> minpoly;
  std::vector<std::pair<std::uint64_t, std::vector<Rational>>> rows;
};

/// Throws PreconditionError naming the line (or row) on malformed input.
EigenDataFile parse_eigendata(std::istream& in, const std::string& source = "<input>");

void write_eigendata(std::ostream& out, const EigenDataFile& file);

/// Builds the coefficient field (irreducibility checked) and the value map.
/// A row at the level prime is dropped.
mf::EigenSystem to_system(const EigenDataFile& file);

EigenDataFile from_system(const mf::EigenSystem& sys, Role role);

mf::EigenSystem ingest_eigen_file(const std::string& path);

void write_eigen_file(const std::string& path, const mf::EigenSystem& sys, Role role);

}  // namespace eiscong::cli
