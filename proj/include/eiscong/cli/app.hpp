#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace eiscong::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPrecondition = 1;
inline constexpr int kExitInternal = 2;
inline constexpr int kExitUsage = 64;

enum class Format { Text, Structured };

/// Effective parameters of one run, in the order they are printed.
struct RunConfig {
  std::string command;
  Format format = Format::Text;
  std::vector<std::pair<std::string, std::string>> params;

  void set(const std::string& key, const std::string& value);
};

/// Parses argv, runs one subcommand and writes its report to out (or to
/// --output). Diagnostics go to err. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eiscong::cli
