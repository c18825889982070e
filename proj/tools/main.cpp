#include <iostream>
#include <string>
#include <vector>

#include "runbinom/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return runbinom::cli::run(args, std::cout, std::cerr);
}
