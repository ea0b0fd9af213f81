#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qfin {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitRegime = 3,
  kExitInvalidArray = 4,
  kExitField = 5,
};

/// Entry point of the `qfin` tool. Results go to `out` (or the --output
/// file), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfin
