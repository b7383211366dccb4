#include <iostream>
#include <string>
#include <vector>

#include "dagum/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dagum::cli::run(args, std::cout, std::cerr);
}
