#include <iostream>

#include "succinct/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return succinct::run_command(args, std::cout, std::cerr).exit_code;
}
