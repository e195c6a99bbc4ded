#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cosys::cli {

/// Runs one command line (args[0] is the program name). Exit status 0 on
/// success, 2 on malformed input or usage, 3 when a budget is exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cosys::cli
