#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace aah::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kPartial = 2 };

// Runs one command line (args exclude the program name). Results go to `out`,
// diagnostics and harvest progress lines to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aah::cli
