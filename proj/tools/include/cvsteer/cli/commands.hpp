#pragma once

#include <iosfwd>

#include "cvsteer/cli/run_config.hpp"

namespace cvsteer::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,
  kExitTolerance = 3,
  kExitIo = 4,
  kExitNoRoot = 5,
};

/// Runs one subcommand on a validated configuration. Output goes to
/// cfg.output_path when set, otherwise to out; diagnostics go to err.
int run_command(Command command, const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command-line entry point: parses argv, merges any --config file and
/// dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cvsteer::cli
