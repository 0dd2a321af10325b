#pragma once

#include <iosfwd>

namespace spectral_range::cli {

/// Exit codes: 0 success, 1 input error (or a failed oracle check), 2 infeasible request,
/// 3 a construction that failed to converge or verify.
enum ExitCode { kOk = 0, kInputError = 1, kInfeasible = 2, kNumericalFailure = 3 };

/// Parses argv, runs one subcommand and writes its JSON report to `out`.
/// Diagnostics and error messages go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spectral_range::cli
