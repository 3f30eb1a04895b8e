#pragma once

#include <ostream>

namespace stlmon {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitSpecError = 1,
  kExitTraceError = 2,
  kExitViolation = 3,
};

/// Runs `stlmon eval|pastify|bench ...`; returns the exit code. Results go
/// to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stlmon
