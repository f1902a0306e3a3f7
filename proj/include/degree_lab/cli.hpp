#pragma once

#include <ostream>

namespace degree_lab {

/// Command-line entry point. Exit codes: 0 success or pass, 1 a check failed,
/// 2 bad input (unknown subcommand, unreadable or malformed files, invalid data).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace degree_lab
