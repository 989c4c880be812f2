#pragma once

#include <iosfwd>

namespace youngwave {

inline constexpr const char* kOutDirEnv = "YOUNGWAVE_OUT_DIR";

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitBadParams = 2,
    kExitSizeCap = 3,
    kExitNonConvergence = 4,
    kExitCrossCheck = 5,
};

/// Runs one subcommand (sample-noise, solve, holder, convergence,
/// direct-compare) and returns its exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace youngwave
