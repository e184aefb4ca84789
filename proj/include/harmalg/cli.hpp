#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace harmalg::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace harmalg::cli
