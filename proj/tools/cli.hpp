#pragma once

#include <iosfwd>

#include "qfilter/error.hpp"

namespace qfilter::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kDimensionError = 3,
  kImpossiblePostselection = 4,
  kVerificationFailure = 5,
};

int exit_code_for(ErrorKind kind) noexcept;

/// Entry point of the `qfilter` tool. Reports go to `out` (or --out FILE);
/// diagnostics go to `err` as a single line
///   error: kind=<ErrorKind> exit=<code> message=<text>
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qfilter::cli
