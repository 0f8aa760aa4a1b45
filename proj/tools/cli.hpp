#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bandlim::cli {

/// Exit statuses of the command-line front end.
enum ExitCode : int {
  kOk = 0,
  kDomainError = 1,  // also usage errors and violated --tol gates
  kNoConvergence = 2,
  kIoError = 3,
};

/// Runs one invocation. `args` excludes the program name. Data goes to `out`
/// (when --out is "-"), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bandlim::cli
