#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qeof::cli {

/// Everything a single invocation was asked to do; echoed into every report.
struct RunConfig {
  std::string command;
  std::string in;
  std::string out;
  std::string kind;
  std::optional<std::size_t> m;
  std::optional<std::size_t> n;
  std::vector<double> lambda;
  std::string mode = "rect";
  std::string basis = "schmidt";
  std::uint64_t shots = 10000;
  std::uint64_t seed = 0;
  std::size_t count = 100;
  double tol = 1e-9;
  bool allow_uncertified = false;
};

enum ExitCode : int { kOk = 0, kValidationFailure = 1, kUsageError = 2 };

/// Parses `args` (without the program name) and executes the subcommand.
/// Reports go to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qeof::cli
