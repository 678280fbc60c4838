#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dmgrad/scenario.hpp"

namespace dmgrad::cli {

inline constexpr const char* version = "0.1.0";

/// Process exit codes.
enum ExitCode : int {
  success = 0,
  config_error = 2,
  domain_error = 3,
  oracle_failure = 4,
};

/// Maximum oracle deviation accepted by the `oracle` subcommand.
inline constexpr double oracle_tolerance = 1e-9;

/// Entry point of the `dmgrad` executable. Output goes to `out` unless a
/// path is configured; diagnostics go to `err`.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Formats a double with 17 significant digits ('.' decimal point).
std::string format_number(double value);

}  // namespace dmgrad::cli
