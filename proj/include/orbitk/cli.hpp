#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace orbitk::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kResource = 2,
  kUnexpectedViolation = 3,
};

/// Runs the command line `args` (args[0] is the program name). Rendered
/// results and data go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orbitk::cli
