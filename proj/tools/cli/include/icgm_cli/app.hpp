#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace icgm::cli {

// Exit codes: 0 all checks passed, 1 a check failed, 2 bad config or usage.
int run(int argc, char** argv);
// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace icgm::cli
