#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kforge {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitVerification = 3,
  kExitDomain = 4,
  kExitIO = 5,
};

/// Runs the tool on args (without the program name). Reports go to out,
/// diagnostics to err.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace kforge
