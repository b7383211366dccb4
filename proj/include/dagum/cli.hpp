#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dagum::cli {

enum ExitCode : int {
  kSuccess = 0,
  kParameterError = 2,
  kNonConvergence = 3,
  kNotPermissible = 4,
};

/// Runs one command line (without the program name).  Documents go to `out`
/// unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "start:stop:count" into count equispaced points.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace dagum::cli
