#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace imconf::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode { kOk = 0, kFailure = 1, kConfigError = 2, kNumericalError = 3 };

/// Runs one command. args excludes the program name. Output goes to the
/// --out file, or to `out` when --out is absent or "-".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace imconf::cli
