#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nscurve::cli {

enum ExitCode { kSuccess = 0, kDomainError = 1, kCrossCheckFailure = 2 };

// Runs one command line (args excludes the program name). Output goes to out,
// diagnostics and usage to err. Nothing is written to out on failure.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nscurve::cli
