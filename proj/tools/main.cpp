#include <iostream>
#include <string>
#include <vector>

#include "jseg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return jseg::cli_run(args, std::cout, std::cerr);
}
