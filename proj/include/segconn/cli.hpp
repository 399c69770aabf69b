#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace segconn {

/// Runs one command; `args` excludes the program name. Returns the process
/// exit code: decide gives 0 (TRUE), 1 (FALSE) or 2 (error); every other
/// command gives 0 or 2.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "%.17g", with ".0" appended when the text would read as an integer.
std::string format_real(double v);

}  // namespace segconn
