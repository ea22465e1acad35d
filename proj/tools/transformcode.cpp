#include <iostream>

#include "transformcode/io/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return tcode::run_command(args, std::cout, std::cerr);
}
