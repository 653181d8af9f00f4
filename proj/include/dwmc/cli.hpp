#pragma once

#include <string>
#include <vector>

namespace dwmc::cli {

inline constexpr const char* kToolVersion = "1.0.0";

// Entry point shared by the dwmc binary and the tests. `args` excludes
// the program name. Returns the process exit code: 0 success, 2 config
// or usage failure, 3 degenerate data, 4 convergence failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace dwmc::cli
