#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cpa {

// Exit codes: 0 completed, 1 MISMATCH under --strict-paper, 2 bad input or
// usage, 3 enumeration guard exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cpa
