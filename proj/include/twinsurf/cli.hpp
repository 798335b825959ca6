#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twinsurf {

/// Command-line entry point. Exit codes: 0 success, 1 invalid input,
/// 2 computation error, 3 failed check in verify-all.
int run(int argc, const char* const* argv);

/// Same with explicit streams; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twinsurf
