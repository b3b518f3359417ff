#include <iostream>
#include <string>
#include <vector>

#include "gonlat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gonlat::parse_and_run(args, std::cout, std::cerr);
}
