#include <iostream>
#include <string>
#include <vector>

#include "nopx/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nopx::execute(args, std::cout, std::cerr);
}
