#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mui::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kResource = 3;
inline constexpr int kMath = 4;

/// Runs the `mui` command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mui::cli
