#include <iostream>

#include "minorank/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return minorank::run_cli(args, std::cout, std::cerr);
}
