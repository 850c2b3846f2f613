#pragma once

#include <iosfwd>

namespace opsyn::cli {

enum ExitCode : int {
  kOk = 0,
  kNotOpaque = 1,
  kNoSolution = 2,
  kCapExceeded = 3,
  kMismatch = 4,
  kUsage = 64,
  kDataError = 65,
};

/// Runs one command line. Data goes to `out`, diagnostics to `err`; the
/// interactive simulator reads from `in`.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace opsyn::cli
