#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qhopf::cli {

/// Runs the command line `args` (without the program name). Returns 0 when
/// every check passed, 1 when any failed, 2 on usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qhopf::cli
