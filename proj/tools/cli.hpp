#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace foresight::cli {

/// Runs the foresight command line. args[0] is the program name.
/// Returns 0 on success, 1 on a validation or missing-artifact error, 2 on a
/// usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace foresight::cli
