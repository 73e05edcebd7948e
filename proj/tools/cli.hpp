#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gradcon::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;      // parse, file and unknown-group errors
inline constexpr int kValidationError = 2; // invalid contraction, algebra or support

/// Runs the command line with args (without the program name).
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace gradcon::cli
