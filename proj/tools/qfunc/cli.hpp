#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qfunc::cli {

/// Exit codes: identity holds / command succeeded, mathematical failure
/// (nonzero residual, solver disagreement), usage or input error.
enum ExitCode : int { kSuccess = 0, kMathFailure = 1, kUsageError = 2 };

/// Runs one command line. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfunc::cli
