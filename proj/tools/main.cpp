#include <iostream>
#include <string>
#include <vector>

#include "pcgroup/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return pcg::main_dispatch(args, std::cout, std::cerr);
}
