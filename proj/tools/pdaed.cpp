#include <iostream>
#include <string>
#include <vector>

#include "pdaed/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pdaed::run_command(args, std::cout, std::cerr);
}
