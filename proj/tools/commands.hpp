#pragma once

#include <string>
#include <vector>

namespace schwarzflow::io {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitBlowup = 3,
};

/// Runs one CLI invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace schwarzflow::io
