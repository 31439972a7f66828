#include <iostream>
#include <string>
#include <vector>

#include "frobdisc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return frobdisc::run_cli(args, std::cout, std::cerr);
}
