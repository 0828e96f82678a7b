#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ipack::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;    // invalid metric, violated conclusion, solver failure
inline constexpr int kExitMalformed = 2;  // bad flags or unreadable/invalid input files

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ipack::cli
