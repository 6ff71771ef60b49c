#pragma once

#include <iosfwd>

namespace k3lat::cli {

/// Exit codes of the command line tool.
enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kInternal = 3 };

/// Parses argv, runs one subcommand and writes JSON (or, with --pretty, a
/// human-readable rendering) to out. Diagnostics go to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace k3lat::cli
