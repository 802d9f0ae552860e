#include <iostream>
#include <string>
#include <vector>

#include "ncic/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  ncic::CommandOutcome outcome = ncic::run_cli(args);
  if (!outcome.output.empty()) std::cout << outcome.output;
  if (!outcome.diagnostics.empty()) std::cerr << outcome.diagnostics;
  return outcome.exit_code;
}
