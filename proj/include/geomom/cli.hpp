#pragma once

// Command-line front end. Subcommands: geom, distribution, confine, verify.
//
// Exit codes:
//   0  success
//   1  verify: at least one identity failed (report still written)
//   2  chart singularity or pole proximity
//   3  quadrature truncation tail above tolerance
//   4  shell fold
//   5  invalid configuration or arguments
//   6  I/O or unexpected internal error
//
// Failures print exactly one line `error[<kind>]: <message>` on stderr.

#include <ostream>
#include <string>
#include <vector>

namespace geomom {

enum ExitCode : int {
  kExitOk = 0,
  kExitIdentityFailed = 1,
  kExitChartSingularity = 2,
  kExitTruncation = 3,
  kExitShellFold = 4,
  kExitInvalidConfig = 5,
  kExitInternal = 6,
};

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace geomom
