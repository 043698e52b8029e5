#include <iostream>
#include <string>
#include <vector>

#include "fjac/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fjac::cli::run_main(args, std::cout, std::cerr);
}
