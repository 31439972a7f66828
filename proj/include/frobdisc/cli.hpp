#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace frobdisc {

// Exit codes of the frobdisc command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitResource = 3,
};

// Runs the command line `args` (args[0] is the program name) writing results
// to `out` and diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace frobdisc
