#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace longtail::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 2;
inline constexpr int kUnknownEntity = 3;
inline constexpr int kNumericalError = 4;

/// Runs the `longtail` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace longtail::cli
