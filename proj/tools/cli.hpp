#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace belief::cli {

enum ExitCode : int { kSuccess = 0, kInputError = 2, kComputationError = 3 };

// Runs the command line `args` (without the program name), writing reports
// to `out` and diagnostics to `err`.  Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace belief::cli
