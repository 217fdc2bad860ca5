#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cac {

// Exit codes of the command-line driver.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitError = 2;

// Runs the `cacheck` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cac
