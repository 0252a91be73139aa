#include <iostream>
#include <vector>

#include "hullfacets/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return hullfacets::cli::run(args, std::cout, std::cerr);
}
