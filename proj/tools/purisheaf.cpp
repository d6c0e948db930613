#include <iostream>

#include "purisheaf/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return purisheaf::cli::runMain(args, std::cout, std::cerr);
}
