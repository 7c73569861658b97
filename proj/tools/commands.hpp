#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace strongmax::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitTargetMissed = 1;
inline constexpr int kExitInvalidInput = 2;

/// Runs one command line (args[0] is the program name). Structured output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace strongmax::cli
