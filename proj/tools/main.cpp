#include <iostream>
#include <string>
#include <vector>

#include "lcsgeo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lcsgeo::run_cli(args, std::cout, std::cerr);
}
