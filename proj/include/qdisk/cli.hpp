#pragma once

#include <iosfwd>

namespace qdisk {

/// Exit codes of the command-line front end.
enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2, kIllConditioned = 3 };

/// Subcommands: verify-weights, index-sweep, parametrix-check, ibp-check.
/// Reports go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qdisk
