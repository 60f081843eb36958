#include <iostream>
#include <string>
#include <vector>

#include "evalues/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return evalues::run_cli(args, std::cin, std::cout, std::cerr);
}
