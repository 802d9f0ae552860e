#pragma once

#include <string>
#include <vector>

namespace ncic {

/// Exit codes: 0 success, 1 infeasible / verification failed, 2 usage error,
/// 3 budget exceeded, 4 invalid input.
struct CommandOutcome {
  int exit_code = 0;
  std::string output;       // JSON payload for standard output
  std::string diagnostics;  // human-readable text for standard error
};

/// Runs one CLI invocation (args exclude the program name). Pure in its
/// inputs: identical files and flags produce byte-identical output.
CommandOutcome run_cli(const std::vector<std::string>& args);

}  // namespace ncic
