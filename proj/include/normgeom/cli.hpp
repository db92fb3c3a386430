#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace normgeom::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kIoError = 3,
  kSearchFailure = 4,
  kViolations = 5,
};

/// Entry point shared by the binary and the tests. Reports go to --out when
/// given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace normgeom::cli
