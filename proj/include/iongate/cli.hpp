#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace iongate::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kVerificationFailed = 2 };

/// Runs one command line; `args` excludes the program name. The emitted
/// document goes to `out` (or to --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses an angle in radians, optionally as a multiple of pi: "0.5",
/// "0.25pi", "pi", "-pi", "3*pi". Throws std::invalid_argument.
double parse_angle(std::string_view text);

}  // namespace iongate::cli
