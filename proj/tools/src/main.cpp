#include <iostream>
#include <string>
#include <vector>

#include "sqperm_cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return sqperm::cli::run(args, std::cout, std::cerr);
}
