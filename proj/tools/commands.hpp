#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace seghull::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // unreadable data, degenerate input, verification mismatch
inline constexpr int kExitUsage = 2;

// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seghull::cli
