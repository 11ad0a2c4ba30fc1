#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vcseffort::cli {

/// Runs the command line `args` (args[0] is the program name).
/// Returns 0 on success, 1 on I/O or parse failure, 2 on semantic or
/// configuration failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace vcseffort::cli
