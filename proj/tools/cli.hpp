#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rumorsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;

/// Runs the command line `args` (args[0] is the program name).
/// Exit codes: 0 success, 1 parse or semantic error, 2 I/O error.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rumorsim::cli
