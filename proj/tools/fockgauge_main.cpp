#include <iostream>
#include <string>
#include <vector>

#include "fockgauge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fockgauge::cli::run(args, std::cout, std::cerr,
                             fockgauge::cli::environment_from_process());
}
