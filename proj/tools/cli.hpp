#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wmeans::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kPass = 0,
  kFail = 1,  // verification failed or was inconclusive
  kUsage = 2,
  kNumerical = 3,
};

/// Runs one command. `args` excludes the program name. Normal output goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wmeans::cli
