#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rangeeer::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kParseError = 2;
inline constexpr int kTrialMismatch = 3;
inline constexpr int kEmptyClass = 4;
inline constexpr int kNonIntegerRatio = 5;

/// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rangeeer::cli
