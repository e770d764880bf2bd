#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace grushin::cli {

enum ExitCode : int {
  kSuccess = 0,
  kBadArguments = 2,
  kPreconditionViolation = 3,
  kIoFailure = 4,
};

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out` (or to the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace grushin::cli
