#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace negocc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

// Runs one command line (arguments after the program name). Results go to
// `out` (or --out FILE); a one-line diagnostic goes to `err` on failure.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace negocc::cli
