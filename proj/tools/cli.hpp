#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace condest::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitMaxIterations = 3;

/// Runs the `condest` command line (arguments without the program name).
/// Reports go to `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace condest::cli
