#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace homflow::cli {

enum ExitCode : int {
  kOk = 0,
  kSolverFailure = 2,
  kBadInput = 3,
  kMassMismatch = 4,
  kValidationFailure = 5,
};

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace homflow::cli
