#pragma once

#include <ostream>

namespace bregman::cli {

enum ExitCode : int {
  kExitConverged = 0,
  kExitUsage = 1,    ///< bad flags, bad config, unreadable instance, solver/config mismatch
  kExitIterCap = 2,  ///< the solver stopped at --max-iters
  kExitFailure = 3,  ///< a verification property failed or the computation broke down
};

/// Entry point of the `bregman` tool. Writes normal output to `out` and
/// diagnostics to `err`; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bregman::cli
