#include <iostream>
#include <string>
#include <vector>

#include "jnr/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return jnr::cli::run(args, std::cout, std::cerr);
}
