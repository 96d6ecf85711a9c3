#include <iostream>
#include <string>
#include <vector>

#include "orbitk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return orbitk::cli::run(args, std::cout, std::cerr);
}
