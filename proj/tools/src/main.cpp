#include <iostream>
#include <string>
#include <vector>

#include "regvar_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return regvar::cli::run(args, std::cout, std::cerr);
}
