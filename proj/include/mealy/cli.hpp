#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mealy::cli {

enum ExitCode : int {
  kSuccess      = 0,
  kUsageError   = 1,  // bad arguments, unreadable or malformed input
  kPrecondition = 2,  // analysis precondition failed, e.g. NoExitCycle
};

// Runs the command line `args` (program name first) and returns the exit
// code. Reports go to `out`, errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace mealy::cli
