#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tcode {

/// Runs one `transformcode` subcommand. args[0] is the program name.
/// Returns 0 on success, 1 on a library error and 2 on a usage error; errors
/// are written to `err` as a JSON object {"error","message"}.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tcode
