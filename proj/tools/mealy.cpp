#include <iostream>
#include <string>
#include <vector>

#include "mealy/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return mealy::cli::run(args, std::cout, std::cerr);
}
