#include <iostream>
#include <string>
#include <vector>

#include "negocc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return negocc::cli::execute(args, std::cout, std::cerr);
}
