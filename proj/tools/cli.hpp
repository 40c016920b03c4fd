#pragma once

#include <iosfwd>

namespace polytree::cli {

enum ExitCode : int {
  kYes = 0,
  kNo = 1,
  kUsage = 2,
  kFailure = 3,  // budget, parse or I/O error
};

/// Runs one command line; writes results to `out` and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polytree::cli
