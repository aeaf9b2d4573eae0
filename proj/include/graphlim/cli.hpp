#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace graphlim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

/// Runs one command line (without the program name). Results go to `out`
/// (or to the -o file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace graphlim::cli
