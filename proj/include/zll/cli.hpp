#pragma once

#include <string>
#include <vector>

namespace zll {

// Full command-line front end; returns the process exit code:
// 0 success, 1 usage error, 2 numerical failure, 3 cache conflict.
// Testable entry point — main() forwards argv here.
int run_cli(const std::vector<std::string>& args);

}  // namespace zll
