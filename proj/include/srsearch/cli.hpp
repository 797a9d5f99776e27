#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace srsearch {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitConfig = 2, kExitEngine = 3 };

/// Runs one command (`simulate`, `curve`, `figure`, `root`, `verify`).
/// args excludes the program name. Errors go to err as a single line
/// "error: <Kind>: <reason>".
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace srsearch
