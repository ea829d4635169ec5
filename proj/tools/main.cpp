#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return smcalg_cli::run(args, std::cin, std::cout, std::cerr);
}
