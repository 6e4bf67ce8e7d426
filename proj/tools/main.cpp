#include <iostream>
#include <string>
#include <vector>

#include "bbmis/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bbmis::cli::dispatch(args, std::cout, std::cerr);
}
