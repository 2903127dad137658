#include <iostream>

#include "tft/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tft::cli::run(args, std::cout);
}
