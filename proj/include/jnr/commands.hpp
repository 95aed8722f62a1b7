#pragma once

// The `jnr` command-line tool. Exit codes: 0 success, 2 input error,
// 3 numerical inconsistency. Errors go to `err` as one JSON object per line.

#include <iosfwd>
#include <string>
#include <vector>

namespace jnr::cli {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jnr::cli
