#pragma once

#include <iosfwd>

namespace latcor::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kError = 1,
  kNegative = 2,  ///< does not embed / obstructed / inconsistent chain
  kInconclusive = 3,
};

/// Runs the command line; reports go to `out`, the single error line to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace latcor::cli
