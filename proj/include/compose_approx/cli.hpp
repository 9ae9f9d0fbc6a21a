#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace compose_approx::cli {

enum ExitCode : int { kSuccess = 0, kArgumentError = 2, kNumericalFailure = 3 };

/// Entry point of the command-line tool; output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the program name supplied.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "8:128", "8:128:4" or "8,16,32".
std::vector<int> parse_degree_list(const std::string& text);

}  // namespace compose_approx::cli
