#include <iostream>
#include <string>
#include <vector>

#include "cac/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cac::run(args, std::cout, std::cerr);
}
