#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lfr::cli {

constexpr int kExitOk = 0, kExitError = 1, kExitInadmissible = 2;

// full command line including argv[0]; output and diagnostics go to the given streams
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lfr::cli
