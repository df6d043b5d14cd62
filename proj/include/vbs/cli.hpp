// Command-line front end.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vbs {

/// Exit codes: 0 success, 1 failed verification, 2 usage or input error,
/// 3 schedule exhausted, guard failed or inconsistent oracles.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vbs
