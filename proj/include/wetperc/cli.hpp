#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wetperc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitParameter = 2,
  kExitEmptyWork = 3,
  kExitStatistical = 4,
};

// Runs the command line (program name excluded). Results go to `out`, or to
// the --out file plus a manifest; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wetperc::cli
