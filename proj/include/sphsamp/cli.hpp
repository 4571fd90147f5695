#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sphsamp {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitParse = 2, kExitContract = 3, kExitAllFailed = 4 };

/// Runs the `sphsamp` command line (arguments exclude the program name).
/// Commands: forward, inverse, weights, tv-norm, integrate, make-signal, experiment.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sphsamp
