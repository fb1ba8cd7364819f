#pragma once

#include "logsurf/error.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace logsurf {

/// Exit codes: 0 success, 2 bad input or a rejected trace, 3 a theorem
/// check failed or a decomposition got stuck.
enum ExitCode : int { ExitOk = 0, ExitBadInput = 2, ExitTheorem = 3 };

int exit_code_for(Errc code);

/// Runs one command line (without the program name).
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace logsurf
