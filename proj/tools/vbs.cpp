#include <iostream>
#include <string>
#include <vector>

#include "vbs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return vbs::run_cli(args, std::cout, std::cerr);
}
