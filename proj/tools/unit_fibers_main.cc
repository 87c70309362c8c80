#include <iostream>
#include <string>
#include <vector>

#include "unit_fibers/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return unit_fibers::RunCli(args, std::cout, std::cerr);
}
