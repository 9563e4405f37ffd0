#pragma once

#include <iosfwd>

namespace cocert {

// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitInput = 2, kExitVerification = 3, kExitIncompatible = 4 };

// Parses arguments and runs one subcommand, writing to the given streams.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cocert
