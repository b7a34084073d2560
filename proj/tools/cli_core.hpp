#pragma once

#include <string>
#include <vector>

namespace mlt::cli {

// Parses and executes one command line (without the program name) and returns
// the process exit code: 0 success, 2 validation failure, 3 I/O failure,
// 4 Monte-Carlo study failure. Linked into both the binary and the test
// drivers so commands can run in-process.
int run(const std::vector<std::string>& args);

}  // namespace mlt::cli
