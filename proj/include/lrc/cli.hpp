#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lrc {

inline constexpr const char* kToolVersion = "1.0.0";

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitInvalidInput = 1, kExitFailure = 2 };

/// Runs the `lrcbounds` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lrc
