#pragma once

#include <ostream>

namespace photostat::cli {

/// Exit status of a run.
enum Exit : int { ok = 0, assertion_failed = 1, usage_error = 2 };

/// Parses arguments (argv[0] is the program name), runs the subcommand and
/// writes data to `--out` or `out`, diagnostics and the summary line to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace photostat::cli
