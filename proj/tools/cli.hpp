#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qnet::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInternalError = 1,
  kValidationError = 2,
  kCapError = 3,
  kInconsistency = 4,
};

// Environment variable overriding the route materialization cap.
inline constexpr const char* kRouteCapEnv = "QNET_ROUTE_CAP";

// Parses `args` (without the program name), runs the subcommand and maps
// library errors onto exit codes. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qnet::cli
