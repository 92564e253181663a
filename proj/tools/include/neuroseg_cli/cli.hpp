#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace neuroseg::cli {

/// Stable process exit statuses.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kIo = 3,
  kSchema = 4,
};

/// Runs the command line `args` (args[0] is the program name) and returns the
/// exit status. Normal output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace neuroseg::cli
