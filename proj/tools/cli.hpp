#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace xdiscord::cli {

/// Runs the command line `args` (without the program name). CSV goes to
/// `out` unless --out names a file; diagnostics go to `err`. Returns the
/// process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xdiscord::cli
