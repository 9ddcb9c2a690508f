#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace copoly::cli {

// Exit codes: 0 success, 1 failed verification or runtime error, 2 bad usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace copoly::cli
