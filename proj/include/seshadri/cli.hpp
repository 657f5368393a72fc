#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace seshadri {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitCounterexample = 1,
  kExitUsage = 2,
  kExitDegenerate = 3,
};

/// Runs the command line `args` (without the program name) and returns the
/// exit code. Subcommands: alpha, sweep, bounds, verify, expdim.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seshadri
