#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qmspec {

/// Entry point shared by the binary and the in-process CLI tests.
/// `args` excludes the program name. Exit codes: 0 success, 1 failed
/// verification/invariant, 2 usage or input error.
int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace qmspec
