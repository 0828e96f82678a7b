#include <iostream>
#include <string>
#include <vector>

#include "ipack/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ipack::cli::run(args, std::cout, std::cerr);
}
