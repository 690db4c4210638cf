#pragma once

#include <iosfwd>

namespace spheredpp::cli {

/// Exit codes: 0 success, 1 runtime failure, 2 bad command line.
enum ExitCode : int { kOk = 0, kRuntimeError = 1, kUsageError = 2 };

/// Runs one subcommand. Artifacts without an --out path go to `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, on std::cout / std::cerr.
int run(int argc, const char* const* argv);

} // namespace spheredpp::cli
