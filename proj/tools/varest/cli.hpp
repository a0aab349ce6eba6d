#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace varest::cli {

enum ExitCode : int
{
  exit_ok = 0,
  exit_usage = 1,
  exit_input = 2,
  exit_computation = 3
};

//! Runs the command line `args` (without the program name). Reports and
//! messages go to `out`/`err`; files are written atomically.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace varest::cli
