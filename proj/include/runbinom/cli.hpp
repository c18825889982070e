#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace runbinom::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_failed = 1,   // verification FAIL or sequence mismatch
  exit_usage = 2,
  exit_io = 3,       // file, cache or network trouble
};

/// Runs one command line (without the program name), writing results to out
/// and diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace runbinom::cli
