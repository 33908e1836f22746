#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "maneuver/config.hpp"
#include "maneuver/error.hpp"

namespace maneuver {

// Process exit statuses.
enum ExitStatus : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,     // bad flags, unknown algorithm, invalid configuration
  kExitMissingModel = 3,
  kExitData = 4,      // corpus, trajectory, dataset and split errors
  kExitTraining = 5,  // fitting and evaluation failures
  kExitModelFile = 6, // unreadable or incompatible model documents
  kExitIo = 7,
};

int exit_status_for(ErrorCode code);

// Runs one CLI invocation; `args` excludes the program name. Errors are reported
// on `err` as a single `ERROR <code>: <message>` line.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err,
            const EnvLookup& env = process_environment());

}  // namespace maneuver
