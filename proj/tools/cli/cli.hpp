#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace edd::cli {

enum ExitStatus : int {
  kOk = 0,
  kNoSolution = 1,  // also: instance or permutation invalid
  kUsage = 2,       // bad arguments or unreadable input
  kCapExceeded = 3,
};

/// Runs one invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace edd::cli
