#include <iostream>
#include <string>
#include <vector>

#include "depcam/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return depcam::cli::run(args, std::cout, std::cerr);
}
