#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccdc::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIncorrect = 2,
  kLoadMismatch = 3,
};

// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ccdc::cli
