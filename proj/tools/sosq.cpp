#include <iostream>
#include <string>
#include <vector>

#include "sosq/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return sosq::cli::run(args, std::cout, std::cerr);
}
