#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace entropic::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kConfigError = 2,
  kNumericalError = 3,
  kNotConverged = 4,
};

/// Runs one invocation. `args` excludes the program name. Records go to `out`
/// (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entropic::cli
