#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hiertags::cli {

/// Runs the command line `args` (args[0] is the program name) and returns the
/// process exit status. Results go to files or `out`; diagnostics to `err`.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace hiertags::cli
