#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pgbrrt::cli {

enum ExitCode : int { kOk = 0, kNoPath = 1, kUsage = 2 };

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pgbrrt::cli
