#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace certiposi::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kBudgetExceeded = 2,
  kInputError = 3,
  kNotPositive = 4,
};

/// Runs one command line (args[0] is the program name) and returns its exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace certiposi::cli
