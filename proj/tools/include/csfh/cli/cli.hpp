#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace csfh::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  /// A check ran and failed: derivation mismatch, negative Harnack minimum,
  /// or a simulation that broke a flow invariant.
  kCheckFailed = 1,
  kNotConvex = 2,
  kStabilityRefused = 3,
  /// Bad input: unreadable file, malformed trace, invalid configuration.
  kInputError = 4,
};

/// Runs the command line `csfh <args...>` (args excludes the program name),
/// writing human-readable output to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace csfh::cli
