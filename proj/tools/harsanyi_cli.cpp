#include <iostream>
#include <string>
#include <vector>

#include "harsanyi/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return harsanyi::run_cli(args, std::cout, std::cerr);
}
