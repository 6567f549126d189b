#pragma once

#include <iosfwd>

namespace hafband::tools {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

/// Entry point of the `hafband` tool: subcommands lhaf, sample, verify, bench.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hafband::tools
